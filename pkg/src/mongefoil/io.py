"""JSON body files, leaf records and small text parsers shared by the CLI."""

import json

import numpy as np

from .errors import InvalidArgumentError, UnsupportedRepresentationError
from .extremal import ellipse_area
from .geometry import Ball, HPolytope, VPolytope


def body_from_dict(data):
    """Build a body from ``{"type": "hpoly" | "vpoly" | "ball", ...}``."""
    if not isinstance(data, dict) or "type" not in data:
        raise InvalidArgumentError("body must be an object with a 'type' field")
    kind = data["type"]
    try:
        if kind == "vpoly":
            return VPolytope(data["vertices"])
        if kind == "hpoly":
            return HPolytope(data["normals"], data["offsets"])
        if kind == "ball":
            return Ball(data["center"], data["radius"])
    except KeyError as exc:
        raise InvalidArgumentError(f"{kind} body is missing field {exc}") from None
    raise InvalidArgumentError(f"unknown body type {kind!r}")


def body_to_dict(body):
    if isinstance(body, Ball):
        return {"type": "ball", "center": body.center.tolist(), "radius": body.radius}
    if isinstance(body, VPolytope):
        return {"type": "vpoly", "vertices": body.vertices.tolist()}
    if isinstance(body, HPolytope):
        return {"type": "hpoly", "normals": body.normals.tolist(),
                "offsets": body.offsets.tolist()}
    raise UnsupportedRepresentationError(f"cannot serialise {type(body).__name__}")


def load_body(path):
    try:
        with open(path) as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise InvalidArgumentError(f"{path}: invalid JSON ({exc})") from None
    return body_from_dict(data)


def complex_pairs(v):
    """``[[re, im], ...]`` for a complex vector."""
    return [[float(c.real), float(c.imag)] for c in np.asarray(v, dtype=complex)]


def leaf_record(disk):
    """Leaf export record of an extremal disk."""
    d = disk.direction
    return {
        "direction": complex_pairs(d.v),
        "lambda": [float(d.scale.real), float(d.scale.imag)],
        "rho": float(disk.rho),
        "center": disk.center.tolist(),
        "center_set": disk.center_set.as_list(),
        "area": ellipse_area(disk),
        "degenerate": bool(disk.is_degenerate),
    }


def parse_complex_vector(text):
    """Parse ``"re,im re,im"`` (or one flat comma list) into a complex vector."""
    parts = [p for p in text.replace(";", " ").replace(",", " ").split() if p]
    try:
        vals = [float(p) for p in parts]
    except ValueError:
        raise InvalidArgumentError(f"cannot parse complex vector {text!r}") from None
    if not vals or len(vals) % 2:
        raise InvalidArgumentError(f"expected (re, im) pairs, got {text!r}")
    arr = np.asarray(vals)
    return arr[0::2] + 1j * arr[1::2]


def parse_range(text):
    """``"a:b:n"`` gives ``n`` equispaced values, a bare number gives itself."""
    parts = text.split(":")
    try:
        if len(parts) == 1:
            return np.array([float(parts[0])])
        if len(parts) == 3:
            n = int(parts[2])
            if n < 1:
                raise ValueError
            return np.linspace(float(parts[0]), float(parts[1]), n)
    except ValueError:
        pass
    raise InvalidArgumentError(f"bad range {text!r}; expected a or a:b:n")


def read_vectors(path):
    """One complex vector per non-empty line; ``#`` starts a comment."""
    out = []
    with open(path) as fh:
        for line in fh:
            line = line.split("#", 1)[0].strip()
            if line:
                out.append(parse_complex_vector(line))
    return out


def fmt(x):
    """CSV number with 17 significant digits."""
    return format(float(x), ".17g")
