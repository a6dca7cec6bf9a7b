"""Parameter sweeps over the curve families, with resumable checkpoints."""

from __future__ import annotations

import itertools
import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass

from .artin_schreier import ArtinSchreierCurve, count_as
from .covers import DegreeDeficiency
from .fibre_product import Component, FibreProduct, count_points_fibre
from .field_tower import MAX_FIELD_ORDER, prime_power, tower_for_q
from .kummer_curve import HypothesisError, ReciprocalKummer, count_points, prop43_curve, thm42_curve
from .polynomial import Poly, format_poly, is_separable
from .records import RecordTable, VerdictKind
from .rows import ReportRow

FAMILIES = ("THM41", "THM51", "THM42", "PROP43", "PROP44", "FIBRE61", "FIBRE63", "AS")
COEFF_MODES = ("binomial", "exhaustive")
MAX_EXHAUSTIVE = 20000


@dataclass
class SearchConfig:
    family: str
    qs: list[int]
    d_max: int = 2
    coeffs: str = "binomial"
    m_values: list[int] | None = None
    s_values: list[int] | None = None
    threshold: str = "NONE"
    table_path: str | None = None
    threads: int = 1
    checkpoint: str | None = None
    d_values: list[int] | None = None
    b_values: list[int] | None = None

    def validate(self) -> None:
        if self.family not in FAMILIES:
            raise ValueError(f"family must be one of {', '.join(FAMILIES)}")
        if self.coeffs not in COEFF_MODES:
            raise ValueError(f"coefficient mode must be one of {', '.join(COEFF_MODES)}")
        if self.d_max < 1:
            raise ValueError("degree cap must be at least 1")
        if self.threads < 1:
            raise ValueError("threads must be at least 1")
        VerdictKind(self.threshold)
        top = max(self.d_values, default=0) if self.d_values is not None else self.d_max
        for q in self.qs:
            prime_power(q)
            if q * q > MAX_FIELD_ORDER:
                raise ValueError(f"q = {q}: q^2 exceeds the field-size guard {MAX_FIELD_ORDER}")
            if self.coeffs == "exhaustive" and q**top > MAX_EXHAUSTIVE:
                raise ValueError(f"q = {q}: exhaustive polynomials up to degree {top} exceed {MAX_EXHAUSTIVE}")
        for name in ("m_values", "s_values", "d_values", "b_values"):
            v = getattr(self, name)
            if v is not None and any(x < 0 for x in v):
                raise ValueError(f"{name} must be non-negative")

    def fingerprint(self) -> dict:
        d = asdict(self)
        for k in ("threads", "checkpoint"):
            d.pop(k)
        return d


# -- parameter grids ---------------------------------------------------------


def _divisors(n: int) -> list[int]:
    return [k for k in range(1, n + 1) if n % k == 0]


def _polys(cfg: SearchConfig, q: int) -> list[Poly]:
    """x^d + b (binomial) or all monic f (exhaustive), deg <= cap, f(0) != 0, separable."""
    F = tower_for_q(q).small
    out = []
    for d in _ds(cfg):
        if cfg.coeffs == "binomial":
            cands = (Poly.monomial(F, d) + Poly.const(F, b) for b in range(1, q))
        else:
            cands = (Poly(F, list(c) + [1]) for c in itertools.product(range(q), repeat=d))
        out.extend(f for f in cands if f(0) != 0 and is_separable(f))
    return out


def _ms(cfg: SearchConfig, q: int, n: int) -> list[int]:
    p = tower_for_q(q).p
    ms = [m for m in _divisors(n) if m >= 2 and m % p]
    if cfg.m_values is not None:
        ms = [m for m in ms if m in cfg.m_values]
    return ms


def _ss(cfg: SearchConfig, m: int) -> list[int]:
    return list(range(m)) if cfg.s_values is None else list(cfg.s_values)


def _ds(cfg: SearchConfig) -> list[int]:
    """Explicit degrees win over the cap."""
    return list(range(1, cfg.d_max + 1)) if cfg.d_values is None else list(cfg.d_values)


def _bs(cfg: SearchConfig, q: int, want_unit: bool) -> list[int]:
    """b in F_q^* with b^2 = 1 (want_unit) or b^2 != 1."""
    F = tower_for_q(q).small
    bs = [b for b in range(1, q) if (F.mul(b, b) == 1) == want_unit]
    if cfg.b_values is not None:
        bs = [b for b in bs if b in cfg.b_values]
    return bs


def cells(cfg: SearchConfig) -> list[tuple[tuple[int, int], list[tuple]]]:
    """((q, m), work items) in lexicographic order."""
    out = []
    fam = cfg.family
    for q in sorted(cfg.qs):
        if fam in ("THM41", "THM51"):
            polys = _polys(cfg, q)
            n = q + 1 if fam == "THM41" else q - 1
            for m in _ms(cfg, q, n):
                out.append(((q, m), [(q, m, s, f) for s in _ss(cfg, m) for f in polys]))
        elif fam in ("THM42", "PROP44"):
            p = tower_for_q(q).p
            if fam == "THM42":
                ds = [d for d in _ds(cfg) if (q + 1) % d == 0]
            else:
                ds = [d for d in _ds(cfg) if q % 2 and d % 2 and d % p and (q * q - 1) % d == 0]
            if cfg.m_values is not None and q + 1 not in cfg.m_values:
                ds = []
            items = [(q, d, b) for d in ds for b in _bs(cfg, q, fam == "PROP44")]
            if items:
                out.append(((q, q + 1), items))
        elif fam == "PROP43":
            m = (q + 1) // 2
            ds = [d for d in _ds(cfg) if q % 2 and (q * q - 1) % (4 * d) == 0]
            if cfg.m_values is not None and m not in cfg.m_values:
                ds = []
            items = [(q, d, b) for d in ds for b in _bs(cfg, q, True)]
            if items:
                out.append(((q, m), items))
        elif fam in ("FIBRE61", "FIBRE63"):
            polys = _polys(cfg, q)
            n = q + 1 if fam == "FIBRE61" else q - 1
            ms = _ms(cfg, q, n)
            for m1 in ms:
                items = []
                for m2 in ms:
                    if m2 < m1:
                        continue
                    for s1, s2 in itertools.product(_ss(cfg, m1), _ss(cfg, m2)):
                        for f1, f2 in itertools.product(polys, polys):
                            items.append((q, m1, s1, f1, m2, s2, f2))
                out.append(((q, m1), items))
        else:  # AS
            polys = _polys(cfg, q)
            ss = cfg.s_values if cfg.s_values is not None else range(0, 2 * cfg.d_max + 1)
            out.append(((q, 0), [(q, s, f) for s in ss for f in polys]))
    return out


# -- evaluation ----------------------------------------------------------------


def _row(family, q, m, f, s, rep, m2=None, s2=None, f2="") -> ReportRow:
    v = rep.verdict
    olb = None
    if v is not None:
        olb = v.lower if v.lower is not None else v.L
    return ReportRow(
        family=family, q=q, m=m, f=f, s=s, g=rep.genus, points=rep.points, olb=olb,
        verdict=v.kind.value if v else "NONE", maximal=rep.maximal, m2=m2, s2=s2, f2=f2,
        note="; ".join(rep.notes),
    )


def evaluate(family: str, item: tuple, table: RecordTable | None) -> ReportRow | None:
    """Count one grid point; None when the instance falls outside the family."""
    try:
        if family in ("THM41", "THM51"):
            q, m, s, f = item
            eps, lam = (-1, 1) if family == "THM41" else (1, -1)
            rep = count_points(ReciprocalKummer(q, m, s, eps, lam, f), table)
            return _row(family, q, m, format_poly(f), s, rep)
        if family in ("THM42", "PROP44"):
            q, d, b = item
            c = thm42_curve(q, d, b)
            return _row(family, q, c.m, format_poly(c.f), d, count_points(c, table))
        if family == "PROP43":
            q, d, b = item
            c = prop43_curve(q, d, b)
            return _row(family, q, c.m, format_poly(c.h.num), d, count_points(c, table))
        if family in ("FIBRE61", "FIBRE63"):
            q, m1, s1, f1, m2, s2, f2 = item
            fp = FibreProduct(q, Component(m1, s1, f1), Component(m2, s2, f2), family[-2:])
            rep = count_points_fibre(fp, table)
            return _row(family, q, m1, format_poly(f1), s1, rep, m2, s2, format_poly(f2))
        q, s, f = item
        rep = count_as(ArtinSchreierCurve(q, s, f), table)
        return _row(family, q, None, format_poly(f), s, rep)
    except (DegreeDeficiency, HypothesisError):
        return None
    except ValueError:
        # e.g. wild Artin-Schreier poles or a constant h: not a curve of the family
        return None


def _load_checkpoint(cfg: SearchConfig) -> tuple[set, list[ReportRow]]:
    if not cfg.checkpoint or not os.path.exists(cfg.checkpoint):
        return set(), []
    with open(cfg.checkpoint) as fh:
        doc = json.load(fh)
    if doc.get("config") != cfg.fingerprint():
        raise ValueError(f"checkpoint {cfg.checkpoint} belongs to a different search")
    return {tuple(c) for c in doc["done"]}, [ReportRow(**r) for r in doc["rows"]]


def _save_checkpoint(cfg: SearchConfig, done: set, rows: list[ReportRow]) -> None:
    doc = {"config": cfg.fingerprint(), "done": sorted(done), "rows": [asdict(r) for r in rows]}
    tmp = cfg.checkpoint + ".tmp"
    with open(tmp, "w") as fh:
        json.dump(doc, fh, sort_keys=True)
    os.replace(tmp, cfg.checkpoint)


def iter_search(cfg: SearchConfig, table: RecordTable | None = None):
    """Yield rows cell by cell in grid order, skipping cells already checkpointed."""
    cfg.validate()
    if table is None and cfg.table_path:
        table = RecordTable.from_csv(cfg.table_path)
    threshold = VerdictKind(cfg.threshold).rank
    done, saved = _load_checkpoint(cfg)
    yield from saved
    with ThreadPoolExecutor(max_workers=cfg.threads) as pool:
        for cell, items in cells(cfg):
            if cell in done:
                continue
            # map() returns results in submission order whatever the schedule
            got = pool.map(lambda it: evaluate(cfg.family, it, table), items)
            rows = [r for r in got if r is not None and VerdictKind(r.verdict).rank >= threshold]
            yield from rows
            if cfg.checkpoint:
                saved.extend(rows)
                done.add(cell)
                _save_checkpoint(cfg, done, saved)


def annotate_isomorphs(rows: list[ReportRow]) -> list[ReportRow]:
    """Mark rows sharing (family, q, g, points) with an earlier row as suspected isomorphs."""
    first: dict[tuple, ReportRow] = {}
    out = []
    for r in rows:
        key = (r.family, r.q, r.g, r.points)
        if key in first:
            f0 = first[key]
            tag = f"suspected isomorph of m={f0.m} f={f0.f} s={f0.s}"
            if f0.m2 is not None:
                tag += f" m2={f0.m2} f2={f0.f2} s2={f0.s2}"
            r = ReportRow(**{**asdict(r), "note": "; ".join(x for x in (r.note, tag) if x)})
        else:
            first[key] = r
        out.append(r)
    return out


def search(cfg: SearchConfig, table: RecordTable | None = None) -> list[ReportRow]:
    return annotate_isomorphs(list(iter_search(cfg, table)))


__all__ = ["FAMILIES", "SearchConfig", "annotate_isomorphs", "cells", "evaluate", "iter_search", "search"]
