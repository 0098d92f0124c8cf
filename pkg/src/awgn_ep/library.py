"""Built-in constellations used by the worked examples."""

from __future__ import annotations

import math
from importlib import resources

import numpy as np

from .constellation import Bundle, Labeling, ValidationError, validate


def three_point_asymmetric() -> Bundle:
    """Three points at (-1, 0, 2) with zero-mean priors (0.62, 0.07, 0.31)."""
    from .fileformat import parse_constellation

    text = resources.files("awgn_ep.data").joinpath("three_point_asymmetric.json").read_text()
    return parse_constellation(text)


def three_point_symmetric(p1: float) -> Bundle:
    """Points (-1, 0, 1) with priors (p1, 1 - 2 p1, p1), ``0 < p1 < 1/2``."""
    if not 0.0 < p1 < 0.5:
        raise ValidationError(f"p1 must lie in (0, 1/2), got {p1!r}", "p1")
    return validate([-1.0, 0.0, 1.0], [p1, 1.0 - 2.0 * p1, p1], name=f"symmetric-3pt p1={p1!r}")


def uniform_pam(order: int, d: float = 2.0) -> Bundle:
    """Equally likely, equally spaced ``order``-PAM with spacing ``d``.

    Power-of-two orders get a natural binary labeling.
    """
    if order < 2:
        raise ValidationError(f"PAM order must be >= 2, got {order}", "order")
    pts = (np.arange(order) - (order - 1) / 2.0) * d
    labels = None
    m = order.bit_length() - 1
    if order == 1 << m:
        labels = Labeling.natural(m)
    return validate(pts, np.full(order, 1.0 / order), labels, name=f"{order}-PAM")


RING_INNER = 4
RING_OUTER = 12


def ring_radii(d: float = 1.0) -> tuple[float, float]:
    """Radii making both rings' adjacent points sit exactly at distance ``d``.

    These are ``d / sqrt(2)`` and ``d / (2 sin(pi / 12))``, which round to
    0.71 d and 1.93 d.
    """
    return d / math.sqrt(2.0), d / (2.0 * math.sin(math.pi / RING_OUTER))


def ring_4_12(p1: float = 0.22, d: float = 1.0, labels=None) -> Bundle:
    """Two-ring 4+12 constellation; inner points have prior ``p1`` each.

    Outer points get ``(1 - 4 p1) / 12`` each. Defaults to a natural
    binary labeling.
    """
    if not 0.0 < p1 < 0.25:
        raise ValidationError(f"p1 must lie in (0, 1/4), got {p1!r}", "p1")
    r1, r2 = ring_radii(d)
    a_in = np.pi / 4 + np.arange(RING_INNER) * (2 * np.pi / RING_INNER)
    a_out = np.pi / RING_OUTER + np.arange(RING_OUTER) * (2 * np.pi / RING_OUTER)
    pts = np.vstack(
        [
            np.column_stack([r1 * np.cos(a_in), r1 * np.sin(a_in)]),
            np.column_stack([r2 * np.cos(a_out), r2 * np.sin(a_out)]),
        ]
    )
    p2 = (1.0 - RING_INNER * p1) / RING_OUTER
    probs = [p1] * RING_INNER + [p2] * RING_OUTER
    if labels is None:
        labels = Labeling.natural(4)
    return validate(pts, probs, labels, name=f"ring-4+12 p1={p1!r}")
