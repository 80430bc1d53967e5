"""Certificate documents: running single curves and sweeps, JSON/CSV output.

Documents are plain dicts of ints, strings, bools and lists, so emission is
deterministic: JSON with sorted keys, CSV with one row per mu_s report.
"""

from __future__ import annotations

import csv
import io
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from typing import Optional, Sequence

from .curve import CurveParams, RingElement, make_curve, semigroup_gaps
from .errors import AsnormalError, ConfigError
from .gf import is_prime, make_field
from .normality import (
    EmbeddingSpec,
    NormalityCertificate,
    Regime,
    certify,
    make_embedding,
    pencil_grid,
    quadric_report,
)
from .rng import SplitMix64, random_f

SCHEMA_VERSION = "1"
MAX_Q_CAP = 256
CSV_HEADER = ["curve_id", "p", "k", "q", "m", "t", "regime", "s", "rank", "target_dim", "surjective", "verdict"]


@dataclass
class RunConfig:
    mode: str = "single"
    p: Optional[int] = None
    k: int = 1
    m: Optional[int] = None
    t: Optional[int] = None
    t_max: int = 2
    regime: str = "CASE1"
    f: str = "x^m"
    seed: Optional[int] = None
    s_extra: int = 2
    max_q: int = 64
    n_random: int = 2
    format: str = "json"
    out: Optional[str] = None
    witnesses: bool = False
    pencil_grid: tuple = (3, 3, (0, 1, 5))
    jobs: int = 1
    timing: bool = False

    def echo(self) -> dict:
        """Fields that determine the output (excludes out, jobs, timing)."""
        d = asdict(self)
        for key in ("out", "jobs", "timing"):
            d.pop(key)
        a, b, deltas = self.pencil_grid
        d["pencil_grid"] = [a, b, list(deltas)]
        return d


def parse_f(spec: str, q: int, p: int, m: Optional[int], rng: Optional[SplitMix64]) -> tuple[int, ...]:
    """Coefficient codes from ``x^m``, ``random`` or a comma-separated list."""
    spec = spec.strip()
    if spec in ("x^m", "xm"):
        if m is None:
            raise ConfigError("--m is required with f=x^m")
        return (0,) * m + (1,)
    if spec == "random":
        if m is None:
            raise ConfigError("--m is required with f=random")
        if rng is None:
            raise ConfigError("--seed is required with f=random")
        return random_f(q, m, rng)
    try:
        codes = tuple(int(tok) for tok in spec.split(","))
    except ValueError:
        raise ConfigError(f"--f: cannot parse {spec!r}") from None
    if any(not 0 <= c < q for c in codes):
        raise ConfigError(f"--f: coefficient codes must lie in [0, {q})")
    if m is not None and len(codes) - 1 != m:
        raise ConfigError(f"--f has degree {len(codes) - 1} but --m is {m}")
    return codes


def curve_id(curve: CurveParams, regime: Regime, t: Optional[int]) -> str:
    tag = f"q{curve.q}-m{curve.m}-{regime.value}"
    if t is not None:
        tag += f"-t{t}"
    return tag + "-f" + ".".join(str(c) for c in curve.f)


def _terms(u: RingElement) -> list:
    return [[mono.i, mono.j, c] for mono, c in sorted(u.terms.items())]


def curve_summary(emb: EmbeddingSpec) -> dict:
    curve = emb.curve
    F = curve.field
    return {
        "p": F.p,
        "k": F.k,
        "q": curve.q,
        "modulus": list(F.modulus),
        "m": curve.m,
        "f": list(curve.f),
        "g": curve.genus,
        "g_formula": (curve.m - 1) * (curve.q - 1) // 2,
        "gap_count": len(semigroup_gaps(curve)),
        "regime": emb.regime.value,
        "t": emb.t,
        "degree": emb.degree,
        "c": emb.c,
        "r": emb.r,
        "h0_drop_ok": emb.h0_drop_ok,
        "outside_remark_scope": emb.outside_remark_scope,
        "hypotheses": {
            "f_is_x_m": curve.is_pure_power,
            "c_le_q_minus_1": emb.c <= curve.q - 1,
            "theorem_covered": emb.theorem_covered,
        },
        "curve_id": curve_id(curve, emb.regime, emb.t),
    }


def certificate_document(cert: NormalityCertificate, config: RunConfig) -> dict:
    emb = cert.embedding
    doc = {
        "schema_version": SCHEMA_VERSION,
        "kind": "certificate",
        "config": config.echo(),
        "curve": curve_summary(emb),
        "mu_reports": [asdict(rep) for rep in cert.mu_reports],
        "verdict": cert.verdict.value,
        "first_failure": cert.first_failure,
    }
    if cert.quadrics is not None:
        doc["quadrics"] = asdict(cert.quadrics)
    if cert.witnesses is not None:
        doc["witnesses"] = [
            {
                "s": w.s,
                "target": [w.target.i, w.target.j],
                "case": w.case.value,
                "solver": w.from_solver,
                "terms": [{"coeff": c, "u": _terms(u), "v": _terms(v)} for c, u, v in w.terms],
            }
            for w in cert.witnesses
        ]
    return doc


def _check_field(config: RunConfig):
    if config.p is None:
        raise ConfigError("--p is required")
    if config.k < 1:
        raise ConfigError("--k must be >= 1")
    if config.s_extra < 0:
        raise ConfigError("--s-extra must be >= 0")
    return make_field(config.p, config.k)


def _build_embedding(config: RunConfig, rng: Optional[SplitMix64] = None) -> EmbeddingSpec:
    F = _check_field(config)
    if config.f.strip() == "random" and rng is None and config.seed is not None:
        rng = SplitMix64(config.seed)
    codes = parse_f(config.f, F.q, F.p, config.m, rng)
    curve = make_curve(F, codes)
    regime = Regime(config.regime)
    return make_embedding(curve, regime, config.t if regime is Regime.CASE2 else None)


def _timed(doc: dict, start: int, config: RunConfig) -> dict:
    if config.timing:
        doc["timing"] = {"elapsed_ns": time.perf_counter_ns() - start}
    return doc


def run_single(config: RunConfig) -> dict:
    start = time.perf_counter_ns()
    emb = _build_embedding(config)
    cert = certify(emb, config.s_extra, witnesses=config.witnesses)
    return _timed(certificate_document(cert, config), start, config)


def run_quadrics(config: RunConfig) -> dict:
    start = time.perf_counter_ns()
    emb = _build_embedding(config)
    rep = quadric_report(emb)
    doc = {
        "schema_version": SCHEMA_VERSION,
        "kind": "quadrics",
        "config": config.echo(),
        "curve": curve_summary(emb),
        "quadrics": asdict(rep),
        "verdict": "MATCH" if rep.match else "MISMATCH",
    }
    return _timed(doc, start, config)


def run_pencil(config: RunConfig) -> dict:
    start = time.perf_counter_ns()
    F = _check_field(config)
    rng = SplitMix64(config.seed) if config.seed is not None else None
    curve = make_curve(F, parse_f(config.f, F.q, F.p, config.m, rng))
    a_max, b_max, deltas = config.pencil_grid
    reports = pencil_grid(curve, a_max, b_max, deltas)
    doc = {
        "schema_version": SCHEMA_VERSION,
        "kind": "pencil",
        "config": config.echo(),
        "curve": {"p": F.p, "k": F.k, "q": curve.q, "m": curve.m, "f": list(curve.f), "g": curve.genus},
        "pencil_reports": [asdict(rep) for rep in reports],
        "verdict": "SURJECTIVE" if all(rep.surjective for rep in reports) else "FAILED",
    }
    return _timed(doc, start, config)


# ---------------------------------------------------------------------------
# Sweeps


def _prime_powers(max_q: int):
    out = []
    for p in range(2, max_q + 1):
        if is_prime(p):
            k, q = 1, p
            while q <= max_q:
                out.append((q, p, k))
                k += 1
                q *= p
    return sorted(out)


def sweep_parameters(regime: Regime, max_q: int, t_max: int = 2) -> list[tuple[int, int, int, int, Optional[int]]]:
    """All (q, p, k, m, t) in deterministic order: ascending q, then m, then t."""
    rows = []
    for q, p, k in _prime_powers(max_q):
        if regime is Regime.CASE1:
            for m in range(2, q):
                if (q - 1) % m == 0:
                    rows.append((q, p, k, m, None))
        else:
            for t in range(1, t_max + 1):
                n = t * q + 1
                for m in range(2, n + 1):
                    if n % m == 0 and m % p and n // m <= q - 1:
                        rows.append((q, p, k, m, t))
    rows.sort(key=lambda row: (row[0], row[3], row[4] or 0))
    return rows


def _sweep_job(job) -> dict:
    p, k, codes, regime, t, config = job
    start = time.perf_counter_ns()
    try:
        curve = make_curve(make_field(p, k), codes)
        emb = make_embedding(curve, regime, t)
        cert = certify(emb, config.s_extra, witnesses=config.witnesses)
        return _timed(certificate_document(cert, config), start, config)
    except AsnormalError as exc:
        return {
            "schema_version": SCHEMA_VERSION,
            "kind": "error",
            "config": config.echo(),
            "curve": {"p": p, "k": k, "f": list(codes), "regime": regime.value, "t": t},
            "error": exc.code,
            "message": str(exc),
        }


def run_sweep(config: RunConfig) -> list[dict]:
    regime = Regime(config.regime)
    if not 2 <= config.max_q <= MAX_Q_CAP:
        raise ConfigError(f"--max-q must lie in [2, {MAX_Q_CAP}]")
    if config.n_random > 0 and config.seed is None:
        raise ConfigError("--seed is required for random curves in a sweep")
    rng = SplitMix64(config.seed) if config.seed is not None else None
    jobs = []
    for q, p, k, m, t in sweep_parameters(regime, config.max_q, config.t_max):
        fs = [(0,) * m + (1,)]
        fs += [random_f(q, m, rng) for _ in range(config.n_random)]
        for codes in fs:
            jobs.append((p, k, codes, regime, t, config))
    if config.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(config.jobs) as pool:
            return list(pool.map(_sweep_job, jobs))
    return [_sweep_job(job) for job in jobs]


def failed_theorem_rows(docs: Sequence[dict]) -> list[dict]:
    """Documents covered by a theorem whose verdict is not PROVEN_NORMAL."""
    return [
        d
        for d in docs
        if d.get("kind") == "certificate"
        and d["curve"]["hypotheses"]["theorem_covered"]
        and d["verdict"] != "PROVEN_NORMAL"
    ]


# ---------------------------------------------------------------------------
# Emission


def emit(docs, fmt: str = "json") -> bytes:
    """Serialize one document or a list of documents."""
    if fmt == "json":
        return (json.dumps(docs, sort_keys=True, indent=2, ensure_ascii=False) + "\n").encode("utf-8")
    if fmt != "csv":
        raise ConfigError(f"unknown format {fmt!r}")
    if isinstance(docs, dict):
        docs = [docs]
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\r\n")
    writer.writerow(CSV_HEADER)
    for doc in docs:
        if doc.get("kind") != "certificate":
            continue
        cur = doc["curve"]
        for rep in doc["mu_reports"]:
            writer.writerow([
                cur["curve_id"], cur["p"], cur["k"], cur["q"], cur["m"],
                "" if cur["t"] is None else cur["t"], cur["regime"], rep["s"], rep["rank"],
                rep["target_dim"], "true" if rep["surjective"] else "false", doc["verdict"],
            ])
    return buf.getvalue().encode("utf-8")
