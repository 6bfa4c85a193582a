"""JSON inputs and CSV/JSON outputs.

Floats are written with 17 significant digits so that a write/read cycle is
lossless; infinities are written as the literal ``inf``.
"""

from __future__ import annotations

import csv
import io
import json
import math
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .distributions import DiscreteDistribution, DistributionError, GmmSpec, summation_slack
from .lorenz import LorenzCurve
from .precision_recall import PrCurve, PrPoint

PARSE_TOL = 1e-6

PR_HEADER = ("lambda", "alpha", "beta")
LORENZ_HEADER = ("t", "F")
ROC_HEADER = ("x", "y")
FRONTIER_HEADER = ("lambda", "pi", "rho")


def format_float(x: float) -> str:
    x = float(x)
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return "%.17g" % x


def parse_float(s: str) -> float:
    return float(s.strip())


def _load_json(path) -> object:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise DistributionError(f"{path}: malformed JSON ({exc})") from None


def _normalize(w: np.ndarray, label: str) -> np.ndarray:
    neg = np.flatnonzero(w < 0)
    if neg.size:
        raise DistributionError(f"{label}: negative weight at atom {int(neg[0])}")
    total = float(w.sum())
    if abs(total - 1.0) > PARSE_TOL * (1 + 1e-9):
        raise DistributionError(f"{label}: weights sum to {total!r}, outside 1 +/- {PARSE_TOL}")
    return w if abs(total - 1.0) <= summation_slack(w.size) else w / total


def _atom_column(atoms, key: str, path) -> np.ndarray:
    out = []
    for i, atom in enumerate(atoms):
        if not isinstance(atom, dict) or key not in atom:
            raise DistributionError(f"{path}: atom {i} lacks field {key!r}")
        v = atom[key]
        if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v):
            raise DistributionError(f"{path}: atom {i} has non-numeric {key!r}: {v!r}")
        if v < 0:
            raise DistributionError(f"{path}: negative weight {key}={v!r} at atom {i}")
        out.append(float(v))
    return np.array(out)


def _atoms(doc, path) -> list:
    if not isinstance(doc, dict) or not isinstance(doc.get("atoms"), list) or not doc["atoms"]:
        raise DistributionError(f"{path}: expected {{\"atoms\": [{{\"p\": .., \"q\": ..}}, ...]}}")
    return doc["atoms"]


def parse_distribution(path) -> tuple[DiscreteDistribution, DiscreteDistribution]:
    """Read a paired distribution file ``{"atoms": [{"p": .., "q": ..}, ...]}``."""
    atoms = _atoms(_load_json(path), path)
    p = _normalize(_atom_column(atoms, "p", path), f"{path} (p)")
    q = _normalize(_atom_column(atoms, "q", path), f"{path} (q)")
    return DiscreteDistribution(p, name="P"), DiscreteDistribution(q, name="Q")


def load_marginal(path, key: str) -> DiscreteDistribution:
    """One marginal: column ``key`` of a paired file, or ``{"weights": [...]}``."""
    doc = _load_json(path)
    if isinstance(doc, dict) and "weights" in doc:
        w = doc["weights"]
        if not isinstance(w, list) or not w:
            raise DistributionError(f"{path}: 'weights' must be a nonempty list")
        w = _atom_column([{key: v} for v in w], key, path)
    else:
        w = _atom_column(_atoms(doc, path), key, path)
    return DiscreteDistribution(_normalize(w, str(path)), name=key.upper())


def parse_gmm(path) -> GmmSpec:
    doc = _load_json(path)
    comps = doc.get("components") if isinstance(doc, dict) else None
    if not isinstance(comps, list):
        raise DistributionError(f"{path}: expected {{\"components\": [...]}}")
    return gmm_from_dict(doc, str(path))


def gmm_from_dict(doc: dict, label: str = "mixture") -> GmmSpec:
    try:
        comps = [(float(c["weight"]), float(c["mean"]), float(c["std"])) for c in doc["components"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise DistributionError(f"{label}: bad component ({exc})") from None
    return GmmSpec(tuple(comps))


def parse_mask(path, n: int) -> np.ndarray:
    """``{"error_atoms": [indices]}`` to a boolean mask of length ``n``."""
    doc = _load_json(path)
    idx = doc.get("error_atoms") if isinstance(doc, dict) else None
    if not isinstance(idx, list):
        raise DistributionError(f"{path}: expected {{\"error_atoms\": [indices]}}")
    mask = np.zeros(n, dtype=bool)
    for i in idx:
        if isinstance(i, bool) or not isinstance(i, int) or not 0 <= i < n:
            raise DistributionError(f"{path}: error atom {i!r} not an index in [0, {n})")
        mask[i] = True
    return mask


def dump_distribution(p: DiscreteDistribution, q: DiscreteDistribution) -> str:
    atoms = ",\n".join(f'    {{"p": {format_float(a)}, "q": {format_float(b)}}}'
                       for a, b in zip(p.weights, q.weights))
    return '{\n  "atoms": [\n' + atoms + "\n  ]\n}\n"


# CSV ------------------------------------------------------------------------

def csv_text(header: Sequence[str], rows: Iterable[Sequence[float]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([format_float(v) for v in row])
    return buf.getvalue()


def write_text(path, text: str) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)
    return path


def read_csv(path, header: Sequence[str]) -> list[list[float]]:
    with open(path, encoding="utf-8", newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows or tuple(h.strip() for h in rows[0]) != tuple(header):
        raise DistributionError(f"{path}: expected header {','.join(header)}")
    out = []
    for i, row in enumerate(rows[1:], start=2):
        if not row:
            continue
        if len(row) != len(header):
            raise DistributionError(f"{path}:{i}: expected {len(header)} fields")
        try:
            out.append([parse_float(v) for v in row])
        except ValueError:
            raise DistributionError(f"{path}:{i}: non-numeric field") from None
    return out


def read_pr_csv(path) -> PrCurve:
    rows = read_csv(path, PR_HEADER)
    if not rows:
        raise DistributionError(f"{path}: no PR points")
    rows.sort(key=lambda r: r[0])
    return PrCurve(tuple(PrPoint(l, a, b) for l, a, b in rows))


def read_lorenz_csv(path) -> LorenzCurve:
    rows = read_csv(path, LORENZ_HEADER)
    try:
        return LorenzCurve.from_breakpoints([r[0] for r in rows], [r[1] for r in rows])
    except ValueError as exc:
        raise DistributionError(f"{path}: {exc}") from None


# JSON -----------------------------------------------------------------------

def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (np.bool_, bool)):
        return bool(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        return x
    return obj


def json_text(obj) -> str:
    """Deterministic JSON: sorted keys, infinities as the string ``"inf"``."""
    return json.dumps(_jsonable(obj), indent=2, sort_keys=True, allow_nan=False) + "\n"
