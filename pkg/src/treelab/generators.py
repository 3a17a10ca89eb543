"""Graph generators and i.i.d. edge-weight laws.

All randomness flows through numpy Generators derived from a 64-bit master
seed via `derive_rng(master, *stream)`: identical (master, stream) pairs
yield identical streams, independent streams otherwise. The generator
identity is recorded in experiment manifests for reproducibility.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .graphs import WeightedMultiGraph

RNG_IDENTIFIER = "numpy.random.PCG64 / SeedSequence(master, spawn_key=stream)"

# Log-weights are clamped just inside double range; the heavy-tail law can
# otherwise overflow to +inf, which the graph build contract rejects.
LOGW_CLAMP = 1e308


def derive_rng(master, *stream):
    """Deterministic per-stream generator: hash of (master, stream indices)."""
    ss = np.random.SeedSequence(int(master), spawn_key=tuple(int(s) for s in stream))
    return np.random.Generator(np.random.PCG64(ss))


# -- weight laws -------------------------------------------------------------

_LAW_KINDS = {
    "constant": ("c",),
    "uniform": ("a", "b"),
    "pareto": ("alpha", "xmin"),
    "lognormal": ("mu", "sigma"),
    "exponential": ("lam",),
    "double_exp_inv_uniform": (),
}


@dataclass(frozen=True)
class WeightLaw:
    """An i.i.d. edge-weight distribution with support in (0, inf).

    Kinds: constant(c), uniform(a, b), pareto(alpha, xmin=1),
    lognormal(mu, sigma), exponential(lam), and double_exp_inv_uniform,
    which draws U uniform on (0,1) and sets logw = exp(1/U) (clamped to
    double range; the underlying U values are kept on the graph because the
    maximum-weight tree equals the minimum spanning tree in the U keys).
    """

    kind: str
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in _LAW_KINDS:
            raise ValueError(f"unknown weight law {self.kind!r}")
        p = dict(self.params)
        if self.kind == "constant":
            if not p.get("c", 0) > 0:
                raise ValueError("constant law needs c > 0")
        elif self.kind == "uniform":
            a, b = p.get("a"), p.get("b")
            if a is None or b is None or a < 0 or b < a:
                raise ValueError("uniform law needs 0 <= a <= b")
        elif self.kind == "pareto":
            p.setdefault("xmin", 1.0)
            if not p.get("alpha", 0) > 0 or not p["xmin"] > 0:
                raise ValueError("pareto law needs alpha > 0 and xmin > 0")
            object.__setattr__(self, "params", p)
        elif self.kind == "lognormal":
            if p.get("mu") is None or not p.get("sigma", -1) >= 0:
                raise ValueError("lognormal law needs mu and sigma >= 0")
        elif self.kind == "exponential":
            if not p.get("lam", 0) > 0:
                raise ValueError("exponential law needs lam > 0")

    def sample_logw(self, rng, size):
        """Draw log-weights; returns (logw, aux_u or None)."""
        p = self.params
        if self.kind == "constant":
            return np.full(size, math.log(p["c"])), None
        if self.kind == "uniform":
            a, b = p["a"], p["b"]
            w = a + (b - a) * rng.random(size)
            while np.any(w <= 0.0):  # only possible when a == 0 and U hit 0
                bad = w <= 0.0
                w[bad] = a + (b - a) * rng.random(int(bad.sum()))
            return np.log(w), None
        if self.kind == "pareto":
            alpha, xmin = p["alpha"], p["xmin"]
            u = rng.random(size)
            return math.log(xmin) - np.log1p(-u) / alpha, None
        if self.kind == "lognormal":
            return rng.normal(p["mu"], p["sigma"], size), None
        if self.kind == "exponential":
            u = rng.random(size)
            w = -np.log1p(-u) / p["lam"]
            while np.any(w <= 0.0):
                bad = w <= 0.0
                w[bad] = -np.log1p(-rng.random(int(bad.sum()))) / p["lam"]
            return np.log(w), None
        # double_exp_inv_uniform: w = exp(exp(1/U))
        u = rng.random(size)
        while np.any(u <= 0.0):
            bad = u <= 0.0
            u[bad] = rng.random(int(bad.sum()))
        with np.errstate(over="ignore"):
            logw = np.exp(1.0 / u)
        return np.minimum(logw, LOGW_CLAMP), u

    def to_config(self):
        return {"kind": self.kind, "params": dict(self.params)}

    @classmethod
    def from_config(cls, cfg):
        return cls(cfg["kind"], dict(cfg.get("params", {})))


def assign_weights(g, law, rng):
    """Fresh i.i.d. log-weights on the topology of g (new graph value)."""
    logw, u = law.sample_logw(rng, g.num_edges)
    return g.replace_logw(logw, edge_u=u)


# -- graph families ----------------------------------------------------------

def gen_complete(n):
    """Complete graph K_n with unit weights."""
    if n < 2:
        raise ValueError("complete graph needs n >= 2")
    us, vs = np.triu_indices(n, k=1)
    return WeightedMultiGraph(n, us, vs, np.zeros(len(us)), np.arange(len(us)),
                              meta={"family": "complete"})


def gen_box(d, L):
    """Nearest-neighbour graph on the box {-L..L}^d, (2L+1)^d vertices."""
    if d < 1 or L < 1:
        raise ValueError("box needs d >= 1 and L >= 1")
    side = 2 * L + 1
    n = side ** d
    if n > 50_000_000:
        raise ValueError(f"box volume {n} exceeds the vertex-count capacity")
    idx = np.arange(n)
    us, vs = [], []
    # vertex index is mixed-radix over coordinates; stride of axis k is side**k
    stride = 1
    for _ in range(d):
        coord = (idx // stride) % side
        keep = coord < side - 1
        us.append(idx[keep])
        vs.append(idx[keep] + stride)
        stride *= side
    us = np.concatenate(us)
    vs = np.concatenate(vs)
    order = np.lexsort((vs, us))
    us, vs = us[order], vs[order]
    return WeightedMultiGraph(n, us, vs, np.zeros(len(us)), np.arange(len(us)),
                              meta={"family": "box", "d": d, "L": L})


def gen_random_regular(n, deg, rng, max_retries=600):
    """Uniform-ish simple connected deg-regular graph via the configuration
    model with rejection (multi-edges, self-loops or disconnection trigger a
    resample)."""
    if (n * deg) % 2 != 0:
        raise ValueError("n * deg must be even")
    if deg < 3 or deg >= n:
        raise ValueError("need 3 <= deg < n")
    if isinstance(rng, (int, np.integer)):
        rng = derive_rng(rng)
    for _ in range(max_retries):
        stubs = np.repeat(np.arange(n, dtype=np.int64), deg)
        rng.shuffle(stubs)
        a = stubs[0::2]
        b = stubs[1::2]
        if np.any(a == b):
            continue
        lo = np.minimum(a, b)
        hi = np.maximum(a, b)
        code = lo * n + hi
        if len(np.unique(code)) != len(code):
            continue
        order = np.argsort(code, kind="stable")
        g = WeightedMultiGraph(n, lo[order], hi[order], np.zeros(len(lo)),
                               np.arange(len(lo)),
                               meta={"family": "regular", "deg": deg})
        if g.connected:
            return g
    raise RuntimeError(f"configuration model failed after {max_retries} attempts")
