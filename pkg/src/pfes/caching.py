"""Optional on-disk persistence for the two memo caches (Gaussian binomials
and nondegenerate-form E-polynomials).

The cache file is versioned and structurally validated on load; anything
that does not parse as the expected schema of integer lists is discarded
with a warning and recomputed, never trusted.
"""

from __future__ import annotations

import json
import os
import sys

from . import efun, qcore
from .qcore import QPoly

CACHE_VERSION = 1
CACHE_FILENAME = f"pfes-cache-v{CACHE_VERSION}.json"


def _coeff_list(value) -> tuple[int, ...]:
    if not isinstance(value, list) or not all(isinstance(c, int) for c in value):
        raise ValueError("coefficient lists must contain integers only")
    return tuple(value)


def load_cache_dir(path: str) -> bool:
    """Prime the memo caches from path; returns True when anything loaded."""
    filename = os.path.join(path, CACHE_FILENAME)
    if not os.path.exists(filename):
        return False
    try:
        with open(filename, "r", encoding="utf-8") as handle:
            data = json.load(handle)
        if data.get("version") != CACHE_VERSION:
            raise ValueError(f"cache version {data.get('version')!r} unsupported")
        gauss = {}
        for m, r, b, coeffs in data.get("gauss_binomial", []):
            if not all(isinstance(x, int) for x in (m, r, b)):
                raise ValueError("gauss_binomial keys must be integers")
            gauss[(m, r, b)] = QPoly(_coeff_list(coeffs))
        nondeg = {}
        for i, coeffs in data.get("nondeg_skew", []):
            if not isinstance(i, int):
                raise ValueError("nondeg_skew keys must be integers")
            nondeg[i] = QPoly(_coeff_list(coeffs))
    except (ValueError, TypeError, KeyError, json.JSONDecodeError) as exc:
        print(f"warning: ignoring corrupt cache file {filename}: {exc}",
              file=sys.stderr)
        return False
    qcore._GAUSS_CACHE.update(gauss)
    efun._NONDEG_CACHE.update(nondeg)
    return True


def save_cache_dir(path: str) -> str:
    """Write the current memo caches under path; returns the file name."""
    os.makedirs(path, exist_ok=True)
    data = {
        "version": CACHE_VERSION,
        "gauss_binomial": [[m, r, b, list(p.coeffs)] for (m, r, b), p
                           in sorted(qcore._GAUSS_CACHE.items())],
        "nondeg_skew": [[i, list(p.coeffs)] for i, p
                        in sorted(efun._NONDEG_CACHE.items())],
    }
    filename = os.path.join(path, CACHE_FILENAME)
    tmp = filename + ".tmp"
    with open(tmp, "w", encoding="utf-8") as handle:
        json.dump(data, handle, sort_keys=True)
    os.replace(tmp, filename)
    return filename
