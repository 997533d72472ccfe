"""Command-line front end.

    python -m affcanon canon --type A --rank 2 --weight 1,1,0

Every run writes one JSON document (or a long-format CSV) with a ``meta``
block recording the conventions in force.  Exit codes: 0 success, 1 a
``verify`` check failed, 2 configuration error, 3 internal invariant violated.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass, field
from typing import Sequence

from . import __version__
from .affine_root import (
    BetaSequence,
    RootClass,
    build_h,
    cartan_datum,
    classify_root,
    defect,
    total_order_I,
)
from .gram import GramMatrix, gram_matrix
from .pbw_index import PBWIndex, classes, total_order
from .qfield import RatFn, as_ratfn, ratfn_from_json, ratfn_to_json
from .solver import (
    DecompResult,
    DegenerateMonomials,
    NotInA,
    SingularBlock,
    decompose,
    verify_decomposition,
)
from .strata import classify_indecomposable, indices_of_stratum, orientation_from_order, stratum_data_of_index

COMMANDS = ("roots", "index", "gram", "canon", "strata", "verify")
ENGINES = ("dp", "brute", "oracle", "oracle-check")
FORMATS = ("json", "csv")
MAX_RANK = 8

CONVENTIONS = {
    "prec0": "lexicographic: c_+ read as c_0, c_-1, ...; c_- read as c_1, c_2, ...; both weakly, one strictly",
    "prec": "c <_0 c', or c ~ c' with c_0 < c'_0 in the product of dominance orders",
    "diagonal_blocks": "H, P, Q have identity diagonal blocks; the within-class Kostka factor U is absorbed "
    "into D; H_pbw = H U, Q_pbw = Q U, D_pbw = U^-t D U^-1 are emitted alongside",
    "matrix_layout": "row = d, column = c; column c of P expands b(c) over L(d), column c of Qinv over m(d)",
}


class ConfigError(ValueError):
    pass


class InvariantViolation(AssertionError):
    def __init__(self, invariant: str, detail: str):
        super().__init__(f"{invariant}: {detail}")
        self.invariant = invariant
        self.detail = detail


@dataclass
class JobConfig:
    command: str
    type: str = "A"
    rank: int = 2
    weight: tuple[int, ...] = ()
    order: int = 10
    engine: str = "dp"
    format: str = "json"
    out: str | None = None
    jobs: int = field(default_factory=lambda: os.cpu_count() or 1)
    bound: int = 12

    def validate(self) -> "JobConfig":
        if self.command not in COMMANDS:
            raise ConfigError(f"unknown command {self.command!r}")
        if self.engine not in ENGINES:
            raise ConfigError(f"unknown engine {self.engine!r}")
        if self.format not in FORMATS:
            raise ConfigError(f"unknown format {self.format!r}")
        self.type = self.type.upper()
        if not 1 <= self.rank <= MAX_RANK:
            raise ConfigError(f"rank must be between 1 and {MAX_RANK}")
        try:
            cartan_datum(self.type, self.rank)
        except ValueError as e:
            raise ConfigError(str(e)) from None
        if self.command != "roots":
            if len(self.weight) != self.rank + 1:
                raise ConfigError(f"weight needs {self.rank + 1} entries, got {len(self.weight)}")
            if any(v < 0 for v in self.weight):
                raise ConfigError("weight must lie in Q_+")
        if self.order < 0 or self.bound < 0 or self.jobs < 1:
            raise ConfigError("order, bound must be >= 0 and jobs >= 1")
        return self


# -- serialisation ----------------------------------------------------------
def matrix_to_json(M) -> dict:
    """Sparse form: {"size": n, "entries": [[i, j, value], ...]} over nonzero entries."""
    rows = M.rows() if hasattr(M, "rows") else M
    n = len(rows)
    ent = []
    for i in range(n):
        for j in range(n):
            x = as_ratfn(rows[i][j])
            if x:
                ent.append([i, j, ratfn_to_json(x)])
    return {"size": n, "entries": ent}


def matrix_from_json(d: dict) -> list[list[RatFn]]:
    n = d["size"]
    M = [[RatFn(0)] * n for _ in range(n)]
    for i, j, v in d["entries"]:
        M[i][j] = ratfn_from_json(v)
    return M


def _index_rows(ordered: Sequence[PBWIndex]) -> list[dict]:
    return [dict(c.to_json(), label=str(c)) for c in ordered]


# -- commands ---------------------------------------------------------------
def _meta(cfg: JobConfig, seq: BetaSequence) -> dict:
    return {
        "tool": "affcanon",
        "version": __version__,
        "command": cfg.command,
        "type": cfg.type,
        "rank": cfg.rank,
        "label": seq.datum.label(),
        "weight": list(cfg.weight),
        "engine": cfg.engine,
        "order": cfg.order,
        "conventions": dict(CONVENTIONS, order_on_I=list(total_order_I(seq)), h_window=list(seq.window)),
    }


def cmd_roots(cfg: JobConfig, seq: BetaSequence) -> dict:
    rows = []
    for k in range(-cfg.bound + 1, cfg.bound + 1):
        b = seq.beta(k)
        rows.append({
            "k": k,
            "h": seq.h(k),
            "beta": list(b),
            "side": "gt" if classify_root(seq.datum, b) is RootClass.REAL_GT else "lt",
            "defect": defect(seq, b),
            "class": classify_indecomposable(seq, b),
        })
    return {
        "word": list(seq.word),
        "tau": list(seq.tau),
        "window": list(seq.window),
        "tau_h": list(seq.tau_h),
        "orientation": seq.orientation,
        "order_on_I": list(total_order_I(seq)),
        "beta": rows,
    }


def _ordered(cfg: JobConfig, seq: BetaSequence) -> list[PBWIndex]:
    return total_order(cfg.weight, seq)


def cmd_index(cfg: JobConfig, seq: BetaSequence) -> dict:
    ordered = _ordered(cfg, seq)
    return {"indices": _index_rows(ordered), "classes": [list(c) for c in classes(ordered)]}


def _gram(cfg: JobConfig, seq: BetaSequence) -> GramMatrix:
    engine = "dp" if cfg.engine == "oracle-check" else cfg.engine
    G = gram_matrix(cfg.weight, seq, engine=engine, jobs=cfg.jobs)
    if cfg.engine == "oracle-check":
        G2 = gram_matrix(cfg.weight, seq, engine="oracle", jobs=cfg.jobs)
        for i, (r1, r2) in enumerate(zip(G.entries, G2.entries)):
            for j, (x, y) in enumerate(zip(r1, r2)):
                if x != y:
                    raise InvariantViolation("inner_product_oracle_agreement", f"entry ({i},{j}): {x} != {y}")
    return G


def _gram_doc(G: GramMatrix) -> dict:
    return {
        "indices": _index_rows(G.indices),
        "classes": [list(c) for c in G.classes],
        "words": [w.to_json() for w in G.words],
        "Lambda": matrix_to_json(G.entries),
    }


def cmd_gram(cfg: JobConfig, seq: BetaSequence) -> dict:
    return _gram_doc(_gram(cfg, seq))


def _decompose(G: GramMatrix, schedule: str = "left") -> DecompResult:
    try:
        return decompose(G, schedule)
    except DegenerateMonomials as e:
        raise InvariantViolation("monomial_words_linearly_independent",
                                 f"Gram matrix has rank {e.rank} < {e.size}") from e
    except NotInA as e:
        raise InvariantViolation("H_entries_in_A", str(e)) from e
    except SingularBlock as e:
        raise InvariantViolation("nonsingular_diagonal_blocks", str(e)) from e


def _canon_doc(res: DecompResult, reports: dict) -> dict:
    doc = _gram_doc(res.gram)
    for name in ("H", "D", "P", "Q", "Qinv", "U", "H_pbw", "Q_pbw", "D_pbw"):
        doc[name] = matrix_to_json(getattr(res, name))
    doc["verification"] = {k: v.to_json() for k, v in reports.items()}
    return doc


def cmd_canon(cfg: JobConfig, seq: BetaSequence) -> dict:
    res = _decompose(_gram(cfg, seq))
    reports = verify_decomposition(res, cfg.order)
    bad = [k for k, r in reports.items() if not r.ok]
    if bad:
        raise InvariantViolation(bad[0], "; ".join(reports[bad[0]].failures[:3]))
    return _canon_doc(res, reports)


def cmd_strata(cfg: JobConfig, seq: BetaSequence) -> dict:
    Q = orientation_from_order(total_order_I(seq), seq.datum)
    rows = []
    for c in _ordered(cfg, seq):
        sd = stratum_data_of_index(c, seq)
        rows.append({"index": dict(c.to_json(), label=str(c)), "stratum": sd.to_json(),
                     "fibre_size": len(indices_of_stratum(sd, seq))})
    return {"quiver": Q.to_json(), "rows": rows}


def cmd_verify(cfg: JobConfig, seq: BetaSequence) -> tuple[dict, bool]:
    out: dict = {}
    G = _gram(cfg, seq)
    G2 = gram_matrix(cfg.weight, seq, engine="oracle", jobs=cfg.jobs)
    agree = G.entries == G2.entries
    out["inner_product_oracle_agreement"] = {"ok": agree, "checked": len(G) ** 2, "failures": [] if agree else ["dp != coproduct"]}
    ok = agree
    try:
        res = decompose(G)
    except DegenerateMonomials as e:
        out["monomial_words_linearly_independent"] = {
            "ok": False, "checked": 1, "failures": [f"rank {e.rank} < {e.size}"]}
        ok = False
        res = None
    if res is not None:
        for k, r in verify_decomposition(res, cfg.order).items():
            out[k] = r.to_json()
            ok = ok and r.ok
        alt = decompose(G, "right")
        same = all(getattr(res, m).entries == getattr(alt, m).entries for m in ("H", "D", "P", "Q"))
        out["uniqueness_alternate_schedule"] = {"ok": same, "checked": 4, "failures": [] if same else ["schedules differ"]}
        ok = ok and same
    dims = all(stratum_data_of_index(c, seq).dim(seq.datum) == tuple(cfg.weight) for c in G.indices)
    out["strata_dimension"] = {"ok": dims, "checked": len(G), "failures": [] if dims else ["dimension mismatch"]}
    ok = ok and dims
    return {"checks": out, "ok": ok}, ok


# -- output -----------------------------------------------------------------
def _csv_rows(cfg: JobConfig, body: dict) -> list[list]:
    rows: list[list] = []

    def cell(v):
        if isinstance(v, dict) and "num" in v:
            return str(ratfn_from_json(v))
        return json.dumps(v, sort_keys=True) if isinstance(v, (dict, list)) else v

    if cfg.command == "roots":
        rows.append(["k", "h", "beta", "side", "defect", "class"])
        rows += [[r["k"], r["h"], cell(r["beta"]), r["side"], r["defect"], r["class"]] for r in body["beta"]]
    elif cfg.command == "index":
        rows.append(["position", "label", "class"])
        for ci, (a, b) in enumerate(body["classes"]):
            rows += [[p, body["indices"][p]["label"], ci] for p in range(a, b)]
    elif cfg.command == "strata":
        rows.append(["label", "Y_P", "Y_R", "Y_I", "l", "l_prime", "lambda", "fibre_size"])
        for r in body["rows"]:
            s = r["stratum"]
            rows.append([r["index"]["label"], cell(s["Y_P"]), cell(s["Y_R"]), cell(s["Y_I"]),
                         s["l"], s["l_prime"], cell(s["lambda"]), r["fibre_size"]])
    elif cfg.command == "verify":
        rows.append(["check", "ok", "checked", "failures"])
        rows += [[k, v["ok"], v["checked"], cell(v["failures"])] for k, v in body["checks"].items()]
    else:
        rows.append(["matrix", "row", "col", "value"])
        for name, m in body.items():
            if isinstance(m, dict) and "entries" in m and "size" in m:
                rows += [[name, i, j, cell(v)] for i, j, v in m["entries"]]
    return rows


def render(cfg: JobConfig, doc: dict) -> str:
    if cfg.format == "json":
        return json.dumps(doc, indent=1, sort_keys=True) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerows(_csv_rows(cfg, doc["result"]))
    return buf.getvalue()


def run(cfg: JobConfig) -> int:
    cfg.validate()
    seq = build_h(cartan_datum(cfg.type, cfg.rank))
    ok = True
    if cfg.command == "verify":
        body, ok = cmd_verify(cfg, seq)
    else:
        body = {
            "roots": cmd_roots,
            "index": cmd_index,
            "gram": cmd_gram,
            "canon": cmd_canon,
            "strata": cmd_strata,
        }[cfg.command](cfg, seq)
    text = render(cfg, {"meta": _meta(cfg, seq), "result": body})
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0 if ok else 1


def _weight(s: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in s.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad weight {s!r}; expected e.g. 1,1,0") from None


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="affcanon", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        s = sub.add_parser(name)
        s.add_argument("--type", default="A")
        s.add_argument("--rank", type=int, default=2)
        s.add_argument("--weight", type=_weight, default=(), required=name != "roots")
        s.add_argument("--order", type=int, default=10, help="series order for almost-orthonormality")
        s.add_argument("--engine", choices=ENGINES, default="dp")
        s.add_argument("--format", choices=FORMATS, default="json")
        s.add_argument("--out", default=None)
        s.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
        s.add_argument("--bound", type=int, default=12, help="roots: list beta_k for -bound < k <= bound")
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    cfg = JobConfig(**{k: v for k, v in vars(ns).items()})
    try:
        return run(cfg)
    except ConfigError as e:
        print(f"config error: {e}", file=sys.stderr)
        return 2
    except InvariantViolation as e:
        print(f"invariant violated: {e.invariant}: {e.detail}", file=sys.stderr)
        return 3
    except AssertionError as e:
        print(f"invariant violated: {e}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
