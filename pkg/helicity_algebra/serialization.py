"""
JSON documents for multivectors and grid files
Rationals travel as "num/den" strings so exact values survive a round trip.
"""
import json
import logging
from pathlib import Path
from typing import Any, Dict, Optional, Union

import numpy as np

from .algebra import Multivector, Signature, blade, blade_indices
from .coefficients import GAUSSIAN, format_fraction, parse_fraction
from .errors import DimensionError, SerializationError
from .fields import AXES, FieldGrid

log = logging.getLogger(__name__)

PathLike = Union[str, Path]


# {{{ multivectors

def signature_to_json(sig: Signature) -> Dict[str, Any]:
    return {"p": sig.p, "q": sig.q, "complex": sig.complexified}


def multivector_to_json(x: Multivector) -> Dict[str, Any]:
    if x.ring is not GAUSSIAN:
        raise SerializationError(f"only exact multivectors can be serialized, got {x.ring.name}")
    terms = []
    for mask, value in x.sorted_terms():
        re, im = GAUSSIAN.parts(value)
        terms.append({"blade": list(blade_indices(mask)), "re": format_fraction(re), "im": format_fraction(im)})
    return {"signature": signature_to_json(x.signature), "terms": terms}


def multivector_from_json(data: Dict[str, Any]) -> Multivector:
    """Inverse of multivector_to_json; [0] or [] denote the scalar blade"""
    try:
        raw = data["signature"]
        sig = Signature(int(raw["p"]), int(raw.get("q", 0)), bool(raw.get("complex", False)))
        acc = Multivector.zero(sig)
        for term in data.get("terms", []):
            indices = tuple(int(i) for i in term["blade"])
            mask = blade(*indices) if indices else 0
            value = GAUSSIAN.from_parts(parse_fraction(term.get("re", "0")), parse_fraction(term.get("im", "0")))
            acc = acc + Multivector(sig, {mask: value})
    except (KeyError, TypeError, AttributeError) as e:
        raise SerializationError(f"malformed multivector document: {e}") from None
    except DimensionError as e:
        raise SerializationError(str(e)) from None
    return acc


def load_multivector(source: str) -> Multivector:
    """Parse inline JSON text, or read it from a file path"""
    text = source.strip()
    if not text.startswith("{"):
        try:
            text = Path(source).read_text(encoding="utf-8")
        except OSError as e:
            raise SerializationError(f"cannot read {source}: {e}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise SerializationError(f"invalid JSON: {e}") from None
    return multivector_from_json(data)

# }}}


# {{{ grid files

def _default_axes(ndim: int):
    if ndim == 4:
        return AXES
    if ndim == 3:
        return AXES[1:]
    raise SerializationError(f"cannot infer axes for a {ndim}-dimensional grid; give 'axes'")


def read_grid(path: PathLike) -> FieldGrid:
    """
    Load a grid header and its samples

    Args:
        path: JSON header; with "data": "path" the samples live in a sidecar
            file of little-endian float64 re/im pairs, relative to the header

    Returns:
        FieldGrid with complex component arrays
    """
    path = Path(path)
    try:
        header = json.loads(path.read_text(encoding="utf-8"))
    except OSError as e:
        raise SerializationError(f"cannot read {path}: {e}") from None
    except json.JSONDecodeError as e:
        raise SerializationError(f"{path} is not valid JSON: {e}") from None

    try:
        extent = tuple(int(n) for n in header["extent"])
        spacing = tuple(float(h) for h in header["spacing"])
        names = [str(c) for c in header["components"]]
        layout = header.get("layout", "row-major")
        mode = header.get("data", "inline")
    except (KeyError, TypeError, ValueError) as e:
        raise SerializationError(f"malformed grid header: {e}") from None
    if layout != "row-major":
        raise SerializationError(f"unsupported layout {layout!r}")

    count = int(np.prod(extent)) * len(names) * 2
    if mode == "inline":
        flat = np.asarray(header.get("values", []), dtype=float)
    elif mode == "path":
        sidecar = path.parent / str(header.get("path", ""))
        try:
            flat = np.fromfile(sidecar, dtype="<f8")
        except OSError as e:
            raise SerializationError(f"cannot read sidecar {sidecar}: {e}") from None
    else:
        raise SerializationError(f"data must be 'inline' or 'path', got {mode!r}")
    if flat.size != count:
        raise SerializationError(f"expected {count} floats for {len(names)} components of {extent}, got {flat.size}")

    samples = flat.reshape(len(names), *extent, 2)
    components = {name: samples[i, ..., 0] + 1j * samples[i, ..., 1] for i, name in enumerate(names)}
    axes = tuple(header.get("axes") or _default_axes(len(extent)))
    periodic = header.get("periodic")
    origin = header.get("origin")
    log.debug("read grid %s: extent=%s components=%s", path, extent, names)
    return FieldGrid(
        axes=axes,
        spacing=spacing,
        components=components,
        periodic=tuple(bool(p) for p in periodic) if periodic else None,
        origin=tuple(float(o) for o in origin) if origin else None,
    )


def write_grid(grid: FieldGrid, path: PathLike, data: str = "inline", names: Optional[list] = None) -> Path:
    """Write `grid` in the format read_grid accepts; returns the header path"""
    path = Path(path)
    names = list(names or grid.components)
    stacked = np.stack([np.asarray(grid[name], dtype=complex) for name in names])
    flat = np.stack([stacked.real, stacked.imag], axis=-1).ravel()
    header: Dict[str, Any] = {
        "extent": list(grid.extent),
        "spacing": list(grid.spacing),
        "components": names,
        "layout": "row-major",
        "data": data,
        "axes": list(grid.axes),
        "periodic": list(grid.periodic),
        "origin": list(grid.origin),
    }
    if data == "inline":
        header["values"] = flat.tolist()
    elif data == "path":
        sidecar = path.with_suffix(".bin")
        flat.astype("<f8").tofile(sidecar)
        header["path"] = sidecar.name
    else:
        raise SerializationError(f"data must be 'inline' or 'path', got {data!r}")
    path.write_text(json.dumps(header), encoding="utf-8")
    return path

# }}}
