"""Command line interface: ``bshm <command> ...``.

Exit codes: 0 success, 1 verification failure, 2 usage or input error,
3 budget or size limit exceeded.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from . import constructions as C
from .core import BshmCertificate, verify_bshm
from .errors import BshmError, BudgetExceeded, FormatError
from .params import HadamardPolicy, Infeasible, classify_params
from .pds import infer_base_sums, parse_packing, union_check, verify_packing, verify_pds_char, \
    verify_pds_definition
from .pm_matrix import PmMatrix, read_matrix, write_matrix
from .search import search_bshm_rows, search_difference_set, search_with_normalization
from .tables import EXTRA_COLUMNS, GOLDEN_FILES, IMPRIMITIVE_RANGES, format_tsv, reproduce_tables, sweep
from .z2 import format_subset, parse_subset

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


def parse_rows(text: str) -> list[int]:
    try:
        rows = [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise UsageError(f"bad row list {text!r}; expected 0-based comma separated integers") from exc
    if not rows:
        raise UsageError("empty row list")
    return rows


def parse_int_pair(text: str) -> tuple[int, int]:
    parts = text.split(",")
    if len(parts) != 2:
        raise UsageError(f"expected 'a,b', got {text!r}")
    try:
        return int(parts[0]), int(parts[1])
    except ValueError as exc:
        raise UsageError(f"expected 'a,b', got {text!r}") from exc


def _policy(args) -> HadamardPolicy:
    return HadamardPolicy(assume_conjecture=args.assume_conjecture, range_limit=args.range_limit)


def _out(text: str) -> None:
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


# -- construct ---------------------------------------------------------------

def _write_artifacts(out_dir: str, family: str, args_used: dict, h: PmMatrix, certs, extra_files=None,
                     blocks=None) -> None:
    os.makedirs(out_dir, exist_ok=True)
    write_matrix(os.path.join(out_dir, "matrix.had"), h)
    names = []
    for i, c in enumerate(certs):
        name = "certificate.json" if len(certs) == 1 else f"certificate-{i}.json"
        with open(os.path.join(out_dir, name), "w", encoding="utf-8") as fh:
            fh.write(c.to_json(indent=2) + "\n")
        names.append(name)
    files = dict(extra_files or {})
    for name, text in files.items():
        with open(os.path.join(out_dir, name), "w", encoding="ascii") as fh:
            fh.write(text)
    manifest = {
        "family": family,
        "arguments": args_used,
        "matrix": "matrix.had",
        "order": h.n_rows,
        "matrix_digest": h.digest(),
        "certificates": names,
        "parameters": [list(c.params) for c in certs],
        "other_files": sorted(files),
    }
    if blocks is not None:
        manifest["blocks"] = [{"rows": list(c.rows), "certificate": name, "with_allones_row": 0 in c.rows[:1]}
                              for c, name in zip(certs, names)]
    with open(os.path.join(out_dir, "manifest.json"), "w", encoding="utf-8") as fh:
        fh.write(json.dumps(manifest, indent=2) + "\n")


def _hadamard(n: int) -> PmMatrix:
    try:
        return C.hadamard_matrix(n)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def cmd_construct(args) -> int:
    fam = args.family
    certs: list[BshmCertificate] = []
    blocks = None
    extra = {}
    used: dict = {}
    if fam == "sylvester":
        _need(args, "r")
        h = C.sylvester(args.r)
        used = {"r": args.r}
    elif fam == "paley":
        _need(args, "q")
        h = C.paley_hadamard(args.q, args.kind)
        used = {"q": args.q, "kind": args.kind}
    elif fam == "bent":
        _need(args, "m")
        d = C.bent_difference_set(args.m)
        h, cert = C.pds_to_bshm(d)
        certs, extra, used = [cert], {"pds.z2": format_subset(d)}, {"m": args.m}
    elif fam == "spread-union":
        _need(args, "m", "s")
        lines = parse_rows(args.lines) if args.lines else None
        d = C.spread_union_pds(args.m, args.s, lines)
        if args.with_identity:
            d = d.with_identity()
        h, cert = C.pds_to_bshm(d)
        certs, extra = [cert], {"pds.z2": format_subset(d)}
        used = {"m": args.m, "s": args.s, "lines": lines, "with_identity": args.with_identity}
    elif fam == "packing":
        _need(args, "m", "partition")
        try:
            partition = [[int(x) for x in blk.split(",")] for blk in args.partition.split(";")]
        except ValueError as exc:
            raise UsageError(f"bad partition {args.partition!r}; expected e.g. '0,1;2;3,4'") from exc
        h, certs = C.packing_to_multibshm(args.m, partition, args.j)
        blocks = True
        used = {"m": args.m, "partition": partition, "j": args.j}
    elif fam == "kron":
        _need(args, "matrix", "rows", "order")
        h, cert = C.kronecker_bshm(read_matrix(args.matrix), parse_rows(args.rows), _hadamard(args.order))
        certs, used = [cert], {"matrix": os.path.basename(args.matrix), "rows": args.rows, "order": args.order}
    elif fam == "ns-n-n-0":
        _need(args, "n", "s")
        h, cert = C.construct_ns_n_n_0(_hadamard(args.n), _hadamard(args.s))
        certs, used = [cert], {"n": args.n, "s": args.s}
    elif fam == "n-2-2-0":
        _need(args, "n")
        h, cert = C.construct_n_2_2_0(_hadamard(args.n))
        certs, used = [cert], {"n": args.n}
    elif fam == "b0-to-bm1":
        if args.matrix:
            _need(args, "rows")
            base, rows = read_matrix(args.matrix), parse_rows(args.rows)
            used = {"matrix": os.path.basename(args.matrix), "rows": args.rows}
        else:
            _need(args, "r", "s")
            # (8rs, 4s, 4s, 0) from orders 4s and 2r
            base, _ = C.construct_ns_n_n_0(_hadamard(4 * args.s), _hadamard(2 * args.r))
            rows = list(range(4 * args.s))
            used = {"r": args.r, "s": args.s}
        h, cert = C.b0_to_bm1(base, rows)
        certs = [cert]
    else:  # pragma: no cover - argparse restricts choices
        raise UsageError(fam)
    if args.rows and fam in ("sylvester", "paley"):
        certs = [verify_bshm(h, parse_rows(args.rows))]
        used["rows"] = args.rows
    _write_artifacts(args.output, fam, used, h, certs, extra, blocks)
    for c in certs:
        _out(c.to_json())
    return EXIT_OK


def _need(args, *names) -> None:
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"construct {args.family} needs " + ", ".join("--" + n for n in missing))


# -- verify / classify ------------------------------------------------------------

def cmd_verify(args) -> int:
    h = read_matrix(args.matrix)
    if args.normalize:
        h = h.normalize_first_row()
    cert = verify_bshm(h, parse_rows(args.rows))
    _out(cert.to_json(indent=2 if args.pretty else None))
    return EXIT_OK


def _graph_str(g) -> str:
    return "(" + ",".join(str(x) for x in g.as_tuple()) + ")"


def cmd_classify(args) -> int:
    res = classify_params(args.n, args.ell, args.a, args.b)
    if isinstance(res, Infeasible):
        if args.json:
            _out(json.dumps({"feasible": False, "rule": res.rule, "reason": res.reason}))
        else:
            _out(f"infeasible {res.rule}: {res.reason}")
        return EXIT_FAIL
    label = res.class_id
    graphs = "/".join(_graph_str(g) for g in res.graph_options)
    if args.json:
        _out(json.dumps({
            "feasible": True, "class": label, "normalized": list(res.params), "switched": res.switched,
            "graphs": [g.to_dict() for g in res.graph_options], "r": res.r, "s": res.s,
        }))
    else:
        line = f"{label}, {'graphs' if len(res.graph_options) > 1 else 'graph'} {graphs}"
        if res.switched:
            line += f" (after switching to {tuple(res.params)})"
        if res.r is not None:
            line += f" r={res.r} s={res.s}"
        _out(line)
    return EXIT_OK


# -- enumerate / tables ------------------------------------------------------------

def cmd_enumerate(args) -> int:
    from .params import enumerate_equiangular, enumerate_imprimitive, enumerate_type1, enumerate_type2
    pol = _policy(args)
    fam = args.family
    if fam == "equiangular":
        n_max = 1296 if args.max is None else args.max
        rows = enumerate_equiangular(args.max_ell, n_max, pol)
    elif fam in ("type1", "type2"):
        n_max = 256 if args.max is None else args.max
        fn = enumerate_type1 if fam == "type1" else enumerate_type2
        rows = fn(n_max, strict=args.strict, policy=pol)
    else:
        r_min, r_max, s_max = IMPRIMITIVE_RANGES[fam]
        r_min = args.min_r if args.min_r is not None else r_min
        r_max = args.max_r if args.max_r is not None else r_max
        s_max = args.max_s if args.max_s is not None else s_max
        rows = enumerate_imprimitive("b0" if fam == "imprimitive-b0" else "bm1", r_max, s_max, r_min, pol)
        if not args.all:
            rows = [r for r in rows if r.exists == "open"]
        if args.max is not None:
            rows = [r for r in rows if r.n <= args.max]
    sys.stdout.write(format_tsv(fam, rows))
    return EXIT_OK


def cmd_tables(args) -> int:
    diffs = reproduce_tables(args.golden, _policy(args))
    for d in diffs.values():
        _out(d.report())
    if args.out:
        os.makedirs(args.out, exist_ok=True)
        for fam, name in GOLDEN_FILES.items():
            with open(os.path.join(args.out, name), "w", encoding="utf-8") as fh:
                fh.write(format_tsv(fam, sweep(fam, _policy(args))))
    return EXIT_OK if all(d.clean for d in diffs.values()) else EXIT_FAIL


# -- pds ------------------------------------------------------------------------------

def _read_text(path: str) -> str:
    with open(path, encoding="ascii") as fh:
        return fh.read()


def cmd_pds(args) -> int:
    text = _read_text(args.file)
    if args.action == "spectrum":
        d = parse_subset(text)
        lines = ["character\tsum"] + [f"{g}\t{int(v)}" for g, v in enumerate(d.spectrum)]
        _out("\n".join(lines))
        return EXIT_OK
    if args.action == "verify":
        d = parse_subset(text)
        p = verify_pds_char(d)
        q = verify_pds_definition(d)
        if p != q:
            raise RuntimeError(f"verifiers disagree: {p} vs {q}")
        _out(json.dumps({"v": p.v, "ell": p.ell, "alpha": p.alpha, "beta": p.beta,
                         "contains_identity": p.contains_identity, "char_values": list(p.char_values)}))
        return EXIT_OK
    parts, delta, sums = parse_packing(text)
    if sums is None:
        sums = infer_base_sums(parts, delta)
    w = verify_packing(parts, delta, sums)
    result = {"r": w.r, "t": w.t, "delta": w.delta, "base_sums": list(w.base_sums),
              "elevated": [int(x) for x in w.elevated]}
    if args.unions:
        result["unions_ok"] = union_check(parts, delta, sums)
    _out(json.dumps(result))
    return EXIT_OK if result.get("unions_ok", True) else EXIT_FAIL


# -- search ---------------------------------------------------------------------------

def cmd_search(args) -> int:
    if args.kind == "ds":
        for s in (args.r, args.k, args.lam):
            if s is None:
                raise UsageError("search ds needs --r, --k and --lam")
        for d in search_difference_set(args.r, args.k, args.lam):
            _out(",".join(str(e) for e in d.elements))
        return EXIT_OK
    if args.matrix is None or args.ell is None:
        raise UsageError("search bshm needs -m FILE and --ell")
    h = read_matrix(args.matrix)
    targets = parse_int_pair(args.targets) if args.targets else None
    kw = dict(shards=args.shards, checkpoint=args.checkpoint, resume=args.resume, workers=args.threads)
    if args.resume and not args.checkpoint:
        raise UsageError("--resume needs --checkpoint")
    if args.normalized:
        if args.checkpoint:
            raise UsageError("--normalized cannot be combined with --checkpoint")
        res = search_with_normalization(h, args.ell, targets, **kw)
        for label in ("raw", "normalized"):
            for _, c in res[label]:
                _out(json.dumps({"matrix": label, **c.to_dict()}))
        return EXIT_OK
    for _, c in search_bshm_rows(h, args.ell, targets, **kw):
        _out(c.to_json())
    return EXIT_OK


# -- parser -------------------------------------------------------------------------

CONSTRUCT_FAMILIES = ("sylvester", "paley", "bent", "spread-union", "packing", "kron", "ns-n-n-0", "n-2-2-0",
                      "b0-to-bm1")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="bshm", description="Balanced splittable Hadamard matrices.")
    p.add_argument("--assume-conjecture", action=argparse.BooleanOptionalAction, default=True,
                   help="treat every multiple of 4 as a Hadamard order")
    p.add_argument("--range-limit", type=int, default=668,
                   help="orders below this are known Hadamard orders when the conjecture is off")
    p.add_argument("--threads", type=int, default=os.cpu_count() or 1, help="worker processes for search")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", help="build a matrix and its certificates")
    c.add_argument("family", choices=CONSTRUCT_FAMILIES)
    c.add_argument("-o", "--output", required=True, help="output directory")
    for name in ("r", "q", "m", "s", "n", "j", "order"):
        c.add_argument(f"--{name}", type=int, default=0 if name == "j" else None)
    c.add_argument("--kind", choices=("I", "II"), default="I", help="Paley construction")
    c.add_argument("--lines", help="spread line indices, comma separated")
    c.add_argument("--with-identity", action="store_true")
    c.add_argument("--partition", help="blocks of line indices, e.g. '0,1;2;3,4'")
    c.add_argument("-m", "--matrix", help="input matrix file")
    c.add_argument("--rows", "-r", help="0-based comma separated rows")
    c.set_defaults(func=cmd_construct)

    v = sub.add_parser("verify", help="certify a row split of a matrix")
    v.add_argument("-m", "--matrix", required=True)
    v.add_argument("-r", "--rows", required=True)
    v.add_argument("--normalize", action="store_true", help="make the first row all ones first")
    v.add_argument("--pretty", action="store_true")
    v.set_defaults(func=cmd_verify)

    k = sub.add_parser("classify", help="feasibility class of (n, ell, a, b)")
    for name in ("n", "ell", "a", "b"):
        k.add_argument(name, type=int)
    k.add_argument("--json", action="store_true")
    k.set_defaults(func=cmd_classify)

    e = sub.add_parser("enumerate", help="parameter sweep as TSV")
    e.add_argument("family", choices=tuple(EXTRA_COLUMNS))
    e.add_argument("--max", type=int, help="largest n (defaults: 1296 equiangular, 256 typed)")
    e.add_argument("--max-ell", type=int, default=700)
    e.add_argument("--strict", action="store_true", help="also apply Krein and absolute bounds")
    e.add_argument("--min-r", type=int)
    e.add_argument("--max-r", type=int)
    e.add_argument("--max-s", type=int)
    e.add_argument("--all", action="store_true", help="imprimitive: list decided rows too")
    e.set_defaults(func=cmd_enumerate)

    d = sub.add_parser("pds", help="difference set tools")
    d.add_argument("action", choices=("verify", "spectrum", "pack-verify"))
    d.add_argument("file")
    d.add_argument("--unions", action="store_true", help="pack-verify: brute force all unions too")
    d.set_defaults(func=cmd_pds)

    s = sub.add_parser("search", help="exhaustive searches")
    s.add_argument("kind", choices=("ds", "bshm"))
    s.add_argument("--r", type=int)
    s.add_argument("--k", type=int)
    s.add_argument("--lam", type=int)
    s.add_argument("-m", "--matrix")
    s.add_argument("--ell", type=int)
    s.add_argument("--targets", help="a,b")
    s.add_argument("--shards", type=int, default=1)
    s.add_argument("--checkpoint")
    s.add_argument("--resume", action="store_true")
    s.add_argument("--normalized", action="store_true", help="also search the row-normalized matrix")
    s.set_defaults(func=cmd_search)

    t = sub.add_parser("tables", help="regenerate the parameter tables and diff against golden files")
    t.add_argument("--golden", help="directory with table2.tsv ... table6.tsv (default: bundled)")
    t.add_argument("--out", help="also write the regenerated tables here")
    t.set_defaults(func=cmd_tables)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"bshm: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        print(f"bshm: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except FormatError as exc:
        print(f"bshm: input error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BshmError as exc:
        print(f"bshm: verification failed: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except OSError as exc:
        print(f"bshm: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"bshm: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
