"""Universal Witt polynomials over Z, generated by symbolic ghost recursion.

``universal_poly("add", n)`` is the integral polynomial mu_{S,n} in the
variables ``x_d, y_d`` (d | n) giving the n-th component of a sum;
``"mul"`` and ``"neg"`` likewise.  ``frobenius_poly(n, r)`` gives the r-th
component of F_n in the variables ``x_d`` (d | rn).

Polynomials are memoized in-process and, for add/mul/neg, on disk under
``$WITTLAB_CACHE_DIR`` (default ``~/.cache/wittlab``).  Disk writes go
through a temporary file and an atomic rename, so concurrent readers never
see a partial file.
"""

from __future__ import annotations

import json
import os
import tempfile
import threading
from pathlib import Path

from ..algebra.ntheory import divisors
from ..algebra.poly import SparsePoly
from ..algebra.rings import PolynomialRing
from .core import from_ghosts, ghost_value

CACHE_VERSION = 1
OPS = ("add", "mul", "neg")

_lock = threading.Lock()
_memo: dict[tuple[str, int], SparsePoly] = {}
_frob_memo: dict[tuple[int, int], SparsePoly] = {}
_reduced: dict[tuple[str, int, int], SparsePoly] = {}


def cache_dir() -> Path | None:
    """Directory of the on-disk cache; ``WITTLAB_CACHE_DIR=""`` disables it."""
    env = os.environ.get("WITTLAB_CACHE_DIR")
    if env is not None:
        return Path(env) if env else None
    return Path.home() / ".cache" / "wittlab"


def var_names(prefix: str, n: int) -> list[str]:
    return [f"{prefix}{d}" for d in divisors(n)]


def _symbolic_vars(op: str, n: int) -> tuple[str, ...]:
    names = var_names("x", n)
    if op != "neg":
        names += var_names("y", n)
    return tuple(names)


def _cache_path(op: str, n: int) -> Path | None:
    base = cache_dir()
    return None if base is None else base / f"{op}_{n}.json"


def _load(op: str, n: int) -> SparsePoly | None:
    path = _cache_path(op, n)
    if path is None or not path.exists():
        return None
    try:
        data = json.loads(path.read_text())
    except (OSError, ValueError):
        return None
    if data.get("op") != op or data.get("index") != n or data.get("version") != CACHE_VERSION:
        return None
    return SparsePoly.from_json(data)


def _store(op: str, n: int, poly: SparsePoly) -> None:
    path = _cache_path(op, n)
    if path is None:
        return
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        payload = {"op": op, "index": n, "version": CACHE_VERSION, **poly.to_json()}
        fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{op}_{n}.", suffix=".tmp")
        with os.fdopen(fd, "w") as fh:
            json.dump(payload, fh)
        os.replace(tmp, path)
    except OSError:
        pass  # the cache is an optimisation only


def _generate(op: str, n: int) -> dict[int, SparsePoly]:
    vars = _symbolic_vars(op, n)
    ring = PolynomialRing(vars)
    xs = {d: ring.gen(f"x{d}") for d in divisors(n)}
    if op == "neg":
        ghost_of = lambda k: -ghost_value(xs, k, ring)  # noqa: E731
    else:
        ys = {d: ring.gen(f"y{d}") for d in divisors(n)}
        if op == "add":
            ghost_of = lambda k: ghost_value(xs, k, ring) + ghost_value(ys, k, ring)  # noqa: E731
        else:
            ghost_of = lambda k: ghost_value(xs, k, ring) * ghost_value(ys, k, ring)  # noqa: E731
    comps = from_ghosts(divisors(n), ring, ghost_of)
    return {d: comps[d].embed(_symbolic_vars(op, d)) for d in divisors(n)}


def universal_poly(op: str, n: int) -> SparsePoly:
    if op not in OPS:
        raise ValueError(f"unknown universal operation {op!r}")
    key = (op, n)
    poly = _memo.get(key)
    if poly is not None:
        return poly
    poly = _load(op, n)
    if poly is None:
        generated = _generate(op, n)
        with _lock:
            for d, pd in generated.items():
                if (op, d) not in _memo:
                    _memo[(op, d)] = pd
                    if _cache_path(op, d) is not None and not _cache_path(op, d).exists():
                        _store(op, d, pd)
        poly = generated[n]
    with _lock:
        _memo.setdefault(key, poly)
    return _memo[key]


def reduced_poly(op: str, n: int, modulus: int) -> SparsePoly:
    """mu_{op,n} with coefficients reduced modulo ``modulus`` (memoized)."""
    key = (op, n, modulus)
    poly = _reduced.get(key)
    if poly is None:
        poly = universal_poly(op, n).reduce_mod(modulus)
        with _lock:
            _reduced[key] = poly
    return poly


def frobenius_poly(n: int, r: int) -> SparsePoly:
    """Component r of F_n as an integral polynomial in x_d, d | rn."""
    key = (n, r)
    poly = _frob_memo.get(key)
    if poly is not None:
        return poly
    top = r * n
    vars = tuple(var_names("x", top))
    ring = PolynomialRing(vars)
    xs = {d: ring.gen(f"x{d}") for d in divisors(top)}
    comps = from_ghosts(divisors(r), ring, lambda k: ghost_value(xs, k * n, ring))
    with _lock:
        for d, pd in comps.items():
            _frob_memo.setdefault((n, d), pd.embed(var_names("x", d * n)))
    return _frob_memo[key]


def clear_memory_cache() -> None:
    with _lock:
        _memo.clear()
        _frob_memo.clear()
        _reduced.clear()
