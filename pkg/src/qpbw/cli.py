"""Command-line front end.

    python -m qpbw transition  --algebra A2 --from 1,2,1 --to 2,1,2 --bound 3
    python -m qpbw intertwiner --algebra B2 --from 1,2,1,2 --to 2,1,2,1 --compare-gamma
    python -m qpbw verify      --algebra A1 --suite main2 --bound 6

Exit codes: 0 success, 1 a verification failed (or a cache recheck found a
mismatch), 2 usage error.  The default cache directory is taken from the
environment variable ``QPBW_CACHE_DIR``.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from . import repmod
from .dpair import TransitionMatrix, transition_gamma, check_lusztig, check_serre_gram
from .fockrep import (FockSpace, psi_matrix, verify_relations, check_vacuum_orbit,
                      check_serre_fock, check_spectra)
from .qscalar import Scalar
from .rmatrix import (rtt_check, check_aq_sl2_relations, check_commutation_relations, constant_r,
                      intertwining_residuals)
from .rootdata import RootDatum, root_datum, parse_word

log = logging.getLogger("qpbw")

CACHE_ENV = "QPBW_CACHE_DIR"
DEFAULT_BOUNDS = {"A1": 3, "A2": 3, "A3": 3, "B2": 2, "G2": 1}
SUITES = ("relations", "pairing", "braid", "rtt", "spectra", "main2")


EPILOG = """\
Node conventions: B2 has node 1 long (d = 2) and node 2 short (d = 1); G2 has
node 1 short (d = 1) and node 2 long (d = 3), so a_12 = -3, a_21 = -1.
Words are comma-separated node lists (1,2,1); they must be reduced words of
the longest Weyl group element.  Multi-indices m = (m_1, ..., m_N) are listed
by reduced-word position.  Exit codes: 0 success, 1 verification failure,
2 usage error.  Default cache directory: $QPBW_CACHE_DIR.
"""


class UsageError(Exception):
    pass


@dataclass
class JobConfig:
    algebra: str
    source: tuple = ()
    target: tuple = ()
    bound: int = 0
    cutoff: int | None = None
    out: str | None = None
    fmt: str = "json"
    cache_dir: str | None = None
    jobs: int = 1
    recheck_cache: bool = False
    compare_gamma: bool = False
    suites: list = field(default_factory=list)

    @property
    def datum(self) -> RootDatum:
        return root_datum(self.algebra)


def _parse_word_arg(R, text, default):
    if text is None:
        return default
    try:
        w = parse_word(text)
    except ValueError as exc:
        raise UsageError(f"cannot parse word {text!r}: {exc}")
    if any(i not in R.nodes for i in w) or not R.is_w0_word(w):
        raise UsageError(f"{text} is not a reduced word of the longest element of {R.label}")
    return w


def make_config(args) -> JobConfig:
    try:
        R = root_datum(args.algebra)
    except (ValueError, KeyError) as exc:
        raise UsageError(f"unknown algebra {args.algebra!r}: {exc}")
    words = R.reduced_words_w0()
    bound = args.bound if args.bound is not None else DEFAULT_BOUNDS.get(R.label, 2)
    if bound < 0:
        raise UsageError("--bound must be >= 0")
    if args.cutoff is not None and args.cutoff < 0:
        raise UsageError("--cutoff must be >= 0")
    if args.jobs < 1:
        raise UsageError("--jobs must be >= 1")
    cfg = JobConfig(algebra=R.label, bound=bound, cutoff=args.cutoff, out=args.out, fmt=args.format,
                    cache_dir=args.cache_dir or os.environ.get(CACHE_ENV) or None, jobs=args.jobs,
                    recheck_cache=args.recheck_cache)
    cfg.source = _parse_word_arg(R, getattr(args, "source", None), words[0])
    cfg.target = _parse_word_arg(R, getattr(args, "target", None), words[-1])
    cfg.compare_gamma = getattr(args, "compare_gamma", False)
    if args.command == "verify":
        if args.suite is None:
            cfg.suites = list(SUITES)
        else:
            cfg.suites = [s.strip() for s in args.suite.split(",") if s.strip()]
            bad = [s for s in cfg.suites if s not in SUITES]
            if bad:
                raise UsageError(f"unknown suite(s) {bad}; choose from {list(SUITES)}")
    return cfg


# -- matrix jobs ------------------------------------------------------------------------

def _multiindices(cfg):
    R = cfg.datum
    ms = R.multiindices(cfg.source, cfg.bound)
    if cfg.cutoff is not None:
        ms = [m for m in ms if max(m, default=0) <= cfg.cutoff]
    return ms


def _rows_worker(task):
    kind, label, i, j, ms, cache_dir = task
    if cache_dir:
        repmod.set_cache_dir(cache_dir)
    R = root_datum(label)
    fn = transition_gamma if kind == "transition" else psi_matrix
    t = time.perf_counter()
    out = {m: {n: c.canonical_str() for n, c in fn(R, i, j, m).items()} for m in ms}
    return out, time.perf_counter() - t


def compute_matrix(cfg, kind):
    """Gamma (kind='transition') or Psi (kind='intertwiner') on the configured window."""
    R = cfg.datum
    blocks = {}
    for m in _multiindices(cfg):
        blocks.setdefault(R.weight_of_multiindex(cfg.source, m), []).append(m)
    order = sorted(blocks, key=lambda g: (sum(g), g))
    tasks = [(kind, R.label, cfg.source, cfg.target, blocks[w], cfg.cache_dir) for w in order]
    if cfg.jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            results = list(pool.map(_rows_worker, tasks))
    else:
        results = [_rows_worker(t) for t in tasks]
    entries = {}
    for w, (rows, dt) in zip(order, results):
        log.info("%s block %s: %d rows in %.3fs", kind, w, len(blocks[w]), dt)
        for m, row in rows.items():
            entries[m] = {n: Scalar.parse(c) for n, c in row.items()}
    return TransitionMatrix(R, cfg.source, cfg.target, entries)


def _cache_file(cfg, kind):
    if not cfg.cache_dir:
        return None
    w = lambda x: "".join(map(str, x))
    cut = "" if cfg.cutoff is None else f"_c{cfg.cutoff}"
    return Path(cfg.cache_dir) / "matrices" / f"{kind}_{cfg.algebra}_{w(cfg.source)}_{w(cfg.target)}_b{cfg.bound}{cut}.json"


def cached_matrix(cfg, kind):
    """Matrix with disk caching; returns (matrix, cache_ok)."""
    path = _cache_file(cfg, kind)
    if path is not None:
        repmod.set_cache_dir(cfg.cache_dir)
        cached = None
        if path.exists():
            try:
                cached = TransitionMatrix.from_json(cfg.datum, json.loads(path.read_text()))
            except (ValueError, KeyError, TypeError) as exc:
                log.error("unreadable cache file %s (%s); recomputing", path, exc)
                mat = compute_matrix(cfg, kind)
                path.write_text(json.dumps(mat.to_json(), indent=1) + "\n")
                return mat, not cfg.recheck_cache
        if cached is not None:
            if not cfg.recheck_cache:
                log.info("cache hit %s", path)
                return cached, True
            fresh = compute_matrix(cfg, kind)
            diff = fresh.diff(cached)
            if diff:
                log.error("cache mismatch in %s: %d entries differ, first %s", path, len(diff), diff[0][:2])
            return fresh, not diff
    mat = compute_matrix(cfg, kind)
    if path is not None:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(json.dumps(mat.to_json(), indent=1) + "\n")
    return mat, True


def matrix_document(cfg, kind, mat):
    doc = {"algebra": cfg.algebra, "kind": kind, "bound": cfg.bound}
    doc.update(mat.to_json())
    return doc


def matrix_csv(mat):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["m", "n", "coeff"])
    for blk in mat.to_json()["blocks"]:
        for ent in blk["entries"]:
            w.writerow([" ".join(map(str, ent["m"])), " ".join(map(str, ent["n"])), ent["coeff"]])
    return buf.getvalue()


def _emit(cfg, text):
    if cfg.out:
        Path(cfg.out).write_text(text)
    else:
        sys.stdout.write(text)


def _dump(doc):
    return json.dumps(doc, indent=1) + "\n"


def cmd_transition(cfg):
    mat, ok = cached_matrix(cfg, "transition")
    _emit(cfg, matrix_csv(mat) if cfg.fmt == "csv" else _dump(matrix_document(cfg, "transition", mat)))
    return 0 if ok else 1


def cmd_intertwiner(cfg):
    mat, ok = cached_matrix(cfg, "intertwiner")
    diff = []
    if cfg.compare_gamma:
        gam, ok2 = cached_matrix(cfg, "transition")
        ok = ok and ok2
        diff = [{"m": list(m), "n": list(n), "psi": a.canonical_str(), "gamma": b.canonical_str()}
                for m, n, a, b in mat.diff(gam)]
        if diff:
            log.error("Psi and Gamma differ in %d entries", len(diff))
    if cfg.fmt == "csv":
        _emit(cfg, matrix_csv(mat))
    else:
        doc = matrix_document(cfg, "intertwiner", mat)
        if cfg.compare_gamma:
            doc["compare_gamma"] = {"diff": diff, "verified": not diff}
        _emit(cfg, _dump(doc))
    return 0 if ok and not diff else 1


# -- verification suites ---------------------------------------------------------------------

def _words(cfg):
    return [cfg.source] if cfg.source == cfg.target else [cfg.source, cfg.target]


def run_suite(cfg, suite):
    R = cfg.datum
    B = cfg.bound
    out = []
    if suite == "main2":
        for w in _words(cfg):
            out.append(check_vacuum_orbit(R, w, B))
            out += check_serre_fock(R, w)
    elif suite == "pairing":
        for w in _words(cfg):
            out.append(check_lusztig(R, w, B))
        out += check_serre_gram(R)
    elif suite == "braid":
        out += repmod.check_braid_relations(R)
    elif suite == "rtt":
        w1 = R.fundamental_weight(1)
        out.append(rtt_check(R, w1, w1, B))
        V = repmod.highest_weight_module(R, w1)
        for name, ok in intertwining_residuals(constant_r(V, V, R.w0_word())):
            out.append({"relation": f"R Delta({name}) = Delta'({name}) R", "status": "pass" if ok else "fail"})
        if R.label == "A1":
            out += check_aq_sl2_relations(B)
        out += check_commutation_relations(R, min(B, 2))
    elif suite == "spectra":
        lams = [R.fundamental_weight(i) for i in R.nodes] + [R.rho]
        for w in _words(cfg):
            out += check_spectra(R, w, lams, B)
    elif suite == "relations":
        for w in _words(cfg):
            F = FockSpace(R, w, cfg.cutoff)
            window = F.window(B)
            if not window:
                raise UsageError("the Fock window is empty (cutoff too small)")
            out += verify_relations(F, window)
    return [dict(r, suite=suite) for r in out]


def cmd_verify(cfg):
    checks = []
    if cfg.cache_dir:
        repmod.set_cache_dir(cfg.cache_dir)
    for s in cfg.suites:
        t = time.perf_counter()
        res = run_suite(cfg, s)
        log.info("suite %s: %d checks in %.2fs", s, len(res), time.perf_counter() - t)
        checks += res
    failed = sum(r["status"] != "pass" for r in checks)
    doc = {"algebra": cfg.algebra, "bound": cfg.bound, "suites": cfg.suites, "checks": checks,
           "summary": {"passed": len(checks) - failed, "failed": failed}}
    if cfg.fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["suite", "relation", "status", "witness"])
        for r in checks:
            w.writerow([r["suite"], r["relation"], r["status"], json.dumps(r.get("witness", ""))])
        _emit(cfg, buf.getvalue())
    else:
        _emit(cfg, _dump(doc))
    return 1 if failed else 0


# -- entry point ---------------------------------------------------------------------

def build_parser():
    p = argparse.ArgumentParser(
        prog="qpbw", description="PBW transition matrices, Fock intertwiners and checks.",
        epilog=EPILOG, formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--algebra", required=True, help="A1, A2, A3, B2, G2, ...")
        sp.add_argument("--from", dest="source", help="source reduced word, e.g. 1,2,1")
        sp.add_argument("--to", dest="target", help="target reduced word")
        sp.add_argument("--bound", type=int, help="degree bound |m| <= B")
        sp.add_argument("--cutoff", type=int, help="per-factor Fock cutoff m_k <= D")
        sp.add_argument("--out", help="output file (default: stdout)")
        sp.add_argument("--format", choices=("json", "csv"), default="json")
        sp.add_argument("--cache-dir", help=f"cache directory (default ${CACHE_ENV})")
        sp.add_argument("--jobs", type=int, default=1, help="worker processes")
        sp.add_argument("--recheck-cache", action="store_true", help="recompute and compare cached results")
        sp.add_argument("-v", "--verbose", action="store_true", help="log timings per weight block")

    common(sub.add_parser("transition", help="transition matrix Gamma between PBW bases"))
    sp = sub.add_parser("intertwiner", help="intertwiner Psi between Fock representations")
    common(sp)
    sp.add_argument("--compare-gamma", action="store_true", help="diff Psi against Gamma")
    sp = sub.add_parser("verify", help="run verification suites")
    common(sp)
    sp.add_argument("--suite", help=f"comma-separated subset of {','.join(SUITES)} (default: all)")
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    try:
        cfg = make_config(args)
        cmd = {"transition": cmd_transition, "intertwiner": cmd_intertwiner, "verify": cmd_verify}[args.command]
        return cmd(cfg)
    except UsageError as exc:
        print(f"qpbw: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
