"""Run configuration: a YAML mapping validated before any computation.

Top-level keys::

    ring: "Z/6" | "ZZ" | "GF(2)[t]" | "GF(2)[x,y]/(x^2,x*y)" | "Z/4 x GF(2)[x]/(x^2)" | "P1(GF(2))"
    window: {...}            # backend-specific caps, see WINDOW_KEYS
    objects: [literal, ...]  # for `ass`
    pool: indecomposables | all | [literal, ...]
    generators: [literal, ...]           # for `classify`
    generator_sets: [[literal, ...], ...]
    phi: ass | assh | min | [prime label, ...]
    theorem: takahashi | gabriel-serre | ie-torf | serre-in-torf
    output: path
    threads: int
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

import yaml

from .affine.calculus import ring_ass, ring_assh, ring_min
from .affine.monomial import MonomialIdeal
from .affine.modules import _parse_monomial
from .affine.rings import ChainRing, FiniteRing, MonomialRing, PIDRing
from .affine.window import FiniteWindow, MonomialWindow, PIDWindow
from .errors import ConfigError, ParseError, WindowTooSmall
from .exact.field import parse_field
from .exact.poly import parse_poly
from .p1.points import GenericPoint, parse_point
from .p1.window import P1Window
from .subcat.universe import AffineBackend, P1Backend

TOP_KEYS = {"ring", "window", "objects", "pool", "generators", "generator_sets", "phi",
            "theorem", "output", "threads"}
THEOREMS = ("takahashi", "gabriel-serre", "ie-torf", "serre-in-torf")
WINDOW_KEYS = {
    "pid": {"primes", "max_exp", "max_rank"},
    "finite": {"max_length"},
    "monomial": {"max_degree", "ideals", "max_summands"},
    "p1": {"twist_min", "twist_max", "max_rank", "max_torsion_length", "max_point_degree", "points"},
}
POOL_CAP = 12


@dataclass
class RunConfig:
    ring: object
    backend: object
    raw: dict = field(default_factory=dict)
    threads: int = 1
    text: str = ""

    def line_of(self, literal) -> int | None:
        """First config line mentioning ``literal`` (for error positions)."""
        for n, line in enumerate(self.text.splitlines(), 1):
            if str(literal) in line:
                return n
        return None

    @property
    def is_p1(self):
        return self.backend.is_p1

    def get(self, key, default=None):
        return self.raw.get(key, default)


# ---------------------------------------------------------------------------
# ring descriptors


class P1Scheme:
    kind = "p1"

    def __init__(self, field_):
        self.field = field_

    def __str__(self):
        return f"P1({self.field})"


def parse_ring(text: str):
    if not isinstance(text, str):
        raise ConfigError(f"ring must be a string, got {text!r}")
    t = text.strip()
    m = re.fullmatch(r"P\^?1\s*\((.*)\)", t)
    if m:
        return P1Scheme(parse_field(m.group(1)))
    if re.match(r"(P\^?\d|Proj|curve|E\()", t, re.I):
        raise ConfigError(f"unsupported scheme {t!r}: only the projective line P1(k) is available")
    if t in ("Z", "ZZ"):
        return PIDRing()
    parts = [p.strip() for p in re.split(r"\s+x\s+", t)]
    if len(parts) > 1:
        return FiniteRing([_chain_factor(p) for p in parts])
    m = re.fullmatch(r"(ZZ?)\s*/\s*\(?\s*(\d+)\s*\)?", t)
    if m:
        try:
            return FiniteRing.integers_mod(int(m.group(2)))
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
    m = re.fullmatch(r"(.+?)\[([^\]]*)\](?:\s*/\s*\((.*)\))?", t)
    if not m:
        raise ConfigError(f"cannot parse ring {t!r}")
    k = parse_field(m.group(1))
    names = tuple(v.strip() for v in m.group(2).split(",") if v.strip())
    if not names or len(set(names)) != len(names):
        raise ConfigError(f"bad variable list in {t!r}")
    rel = m.group(3)
    if len(names) == 1 and not rel:
        if names[0] != "t":
            raise ConfigError("the polynomial PID must use the variable t")
        return PIDRing(k)
    gens = [g.strip() for g in (rel or "").split(",") if g.strip()]
    try:
        I = MonomialIdeal(len(names), tuple(_parse_monomial(g, names) for g in gens))
    except ParseError as exc:
        raise ConfigError(f"relations of {t!r}: {exc.message}") from None
    if len(names) == 1 and k.is_finite and len(I.gens) == 1:
        return FiniteRing([ChainRing(k.p, I.gens[0][0], names[0])])
    try:
        return MonomialRing(k, names, I)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def _chain_factor(text):
    m = re.fullmatch(r"ZZ?\s*/\s*(\d+)(?:\s*\^\s*(\d+))?", text)
    if m:
        n = int(m.group(1)) ** int(m.group(2) or 1)
        fac = PIDRing().factor(n) if n > 1 else []
        if len(fac) != 1:
            raise ConfigError(f"{text!r} is not a chain ring (need a prime power modulus)")
        p, e = fac[0]
        return ChainRing(p.key, e)
    m = re.fullmatch(r"(.+?)\[(\w+)\]\s*/\s*\(\s*(\w+)\s*(?:\^\s*(\d+))?\s*\)", text)
    if m and m.group(2) == m.group(3):
        k = parse_field(m.group(1))
        if not k.is_finite:
            raise ConfigError("chain rings need a finite coefficient field")
        return ChainRing(k.p, int(m.group(4) or 1), m.group(2))
    raise ConfigError(f"cannot parse chain-ring factor {text!r}")


def ring_kind(ring):
    if isinstance(ring, P1Scheme):
        return "p1"
    if isinstance(ring, PIDRing):
        return "pid"
    if isinstance(ring, FiniteRing):
        return "finite"
    return "monomial"


# ---------------------------------------------------------------------------
# windows


def _int(d, key, default=None, lo=0):
    if key not in d:
        if default is None:
            raise ConfigError(f"window.{key} is required")
        return default
    v = d[key]
    if not isinstance(v, int) or isinstance(v, bool) or v < lo:
        raise ConfigError(f"window.{key} must be an integer >= {lo}, got {v!r}")
    return v


def parse_window(ring, data):
    data = data or {}
    if not isinstance(data, dict):
        raise ConfigError("window must be a mapping")
    kind = ring_kind(ring)
    unknown = set(data) - WINDOW_KEYS[kind]
    if unknown:
        raise ConfigError(f"unknown window keys for a {kind} backend: {sorted(unknown)}; "
                          f"allowed: {sorted(WINDOW_KEYS[kind])}")
    if kind == "pid":
        primes = []
        for p in data.get("primes", []):
            try:
                if ring.is_integers:
                    primes.append(ring.prime(int(p)))
                else:
                    primes.append(ring.prime(parse_poly(str(p), ring.base)))
            except (ValueError, ParseError) as exc:
                raise ConfigError(f"window.primes: {exc}") from None
        return PIDWindow(tuple(primes), _int(data, "max_exp", 1), _int(data, "max_rank", 1))
    if kind == "finite":
        return FiniteWindow(_int(data, "max_length"))
    if kind == "monomial":
        summ = _int(data, "max_summands", 2)
        if "ideals" in data:
            ideals = [_ideal(s, ring) for s in data["ideals"]]
            return MonomialWindow(tuple(ideals), summ)
        try:
            return MonomialWindow.by_degree(ring, _int(data, "max_degree", 2), summ)
        except WindowTooSmall as exc:
            raise ConfigError(str(exc)) from None
    pts = []
    for s in data.get("points", []):
        try:
            pts.append(parse_point(str(s), ring.field))
        except ParseError as exc:
            raise ConfigError(f"window.points: {exc}") from None
    deg = data.get("max_point_degree")
    if deg is not None:
        deg = _int(data, "max_point_degree", lo=1)
    try:
        return P1Window(ring.field, _int(data, "twist_min", -3, lo=-10**6),
                        _int(data, "twist_max", 3, lo=-10**6), _int(data, "max_rank", 1),
                        _int(data, "max_torsion_length", 1), tuple(pts), deg)
    except ConfigError:
        raise
    except Exception as exc:  # UnsupportedBackend from the rank cap
        raise ConfigError(str(exc)) from None


def _ideal(text, ring):
    s = str(text).strip()
    if s.startswith("(") and s.endswith(")"):
        s = s[1:-1]
    try:
        gens = tuple(_parse_monomial(g.strip(), ring.names) for g in s.split(",") if g.strip())
    except ParseError as exc:
        raise ConfigError(f"window.ideals: {exc.message}") from None
    return MonomialIdeal(ring.n, gens) + ring.relations


# ---------------------------------------------------------------------------
# whole config


def load_config(path=None, text=None, overrides=()):
    """Read and validate a config file (or YAML text) with ``key.sub=value`` overrides."""
    if text is None:
        try:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise ConfigError(f"cannot read config: {exc}") from None
    try:
        raw = yaml.safe_load(text) or {}
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        if mark is not None:
            raise ParseError(f"invalid YAML: {exc.problem}", column=mark.column + 1,
                             line=mark.line + 1) from None
        raise ParseError(f"invalid YAML: {exc}") from None
    if not isinstance(raw, dict):
        raise ConfigError("config must be a mapping")
    for item in overrides:
        _apply_override(raw, item)
    unknown = set(raw) - TOP_KEYS
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}; allowed: {sorted(TOP_KEYS)}")
    if "ring" not in raw:
        raise ConfigError("config needs a 'ring'")
    ring = parse_ring(raw["ring"])
    window = parse_window(ring, raw.get("window"))
    backend = P1Backend(window) if ring_kind(ring) == "p1" else AffineBackend(ring, window)
    threads = raw.get("threads", 1)
    if not isinstance(threads, int) or threads < 1:
        raise ConfigError("threads must be a positive integer")
    theorem = raw.get("theorem")
    if theorem is not None and theorem not in THEOREMS:
        raise ConfigError(f"unknown theorem {theorem!r}; expected one of {', '.join(THEOREMS)}")
    return RunConfig(ring, backend, raw, threads, text)


def _apply_override(raw, item):
    if "=" not in item:
        raise ConfigError(f"override {item!r} must look like key=value")
    key, value = item.split("=", 1)
    node = raw
    parts = key.strip().split(".")
    for p in parts[:-1]:
        node = node.setdefault(p, {})
        if not isinstance(node, dict):
            raise ConfigError(f"override {item!r}: {p} is not a mapping")
    node[parts[-1]] = yaml.safe_load(value)


# ---------------------------------------------------------------------------
# literals inside a config


def parse_object(cfg: RunConfig, text):
    try:
        return cfg.backend.parse(str(text))
    except ParseError as exc:
        raise ParseError(exc.message, exc.text, exc.column, exc.line or cfg.line_of(text)) from None
    except ValueError as exc:
        raise ParseError(str(exc), str(text), line=cfg.line_of(text)) from None


def resolve_pool(cfg: RunConfig, U):
    choice = cfg.get("pool", "indecomposables")
    if choice == "indecomposables":
        pool = [i for i, M in enumerate(U.objects) if len(M.indecomposables()) == 1]
    elif choice == "all":
        pool = [i for i in range(len(U)) if i != U.zero]
    elif isinstance(choice, list):
        pool = [U.idx(parse_object(cfg, s)) for s in choice]
    else:
        raise ConfigError("pool must be 'indecomposables', 'all' or a list of literals")
    pool = sorted(set(pool))
    if len(pool) > POOL_CAP:
        raise ConfigError(f"generator pool has {len(pool)} members; the cap is {POOL_CAP} "
                          "(list the pool explicitly or shrink the window)")
    return pool


def resolve_phi(cfg: RunConfig, U):
    choice = cfg.get("phi", "ass")
    ring = cfg.ring
    if cfg.is_p1:
        if isinstance(choice, str):
            if choice in ("ass", "assh", "min"):
                return frozenset({GenericPoint(ring.field)})
            raise ConfigError(f"unknown phi {choice!r}")
        out = set()
        for s in choice:
            if str(s).strip() in ("eta", "generic"):
                out.add(GenericPoint(ring.field))
            else:
                out.add(parse_point(str(s), ring.field))
        return frozenset(out)
    if isinstance(choice, str):
        table = {"ass": ring_ass, "assh": ring_assh, "min": ring_min}
        if choice not in table:
            raise ConfigError(f"unknown phi {choice!r}; use ass, assh, min or a list of primes")
        return table[choice](ring)
    out = set()
    for s in choice:
        out.add(_prime(ring, str(s)))
    return frozenset(out)


def _prime(ring, text):
    try:
        if isinstance(ring, PIDRing):
            t = text.strip()
            if t in ("(0)", "0"):
                return ring.zero_prime
            body = t[1:-1] if t.startswith("(") else t
            if ring.is_integers:
                return ring.prime(int(body))
            return ring.prime(parse_poly(body, ring.base))
        return ring.prime_from_label(text)
    except (ValueError, ParseError) as exc:
        raise ConfigError(f"bad prime {text!r}: {exc}") from None
