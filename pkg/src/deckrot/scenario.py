"""Scenario files: a line-oriented key-value grammar with strict parsing.

    # comment
    [space]
    kind = annulus
    pairing = 1

    [homeo T]
    family = annulus_twist
    rho0 = 0
    rho1 = 1/2

    [point x]
    coords = 0, 0

    [analysis twist-cert]
    op = certify-rotation
    g = T
    x = x
    y = y
    genset = S

Numbers accept exact rationals (p/q), decimals and `inf`.  Points and
winding tuples are comma-separated; lists of tuples are separated by
semicolons.  Unknown sections, unknown keys and unresolved references are
parse errors reporting the offending line.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .cocycle import g_cocycle, k_power_eval, seminorm
from .errors import DeckrotError, ScenarioError
from .homeo import (
    AnnulusTwist,
    CosineTwist,
    GradientTimeOne,
    Identity,
    NumericSampledMap,
    PLCircleMap,
    RigidRotation,
    TorusShear,
    compose,
    power,
)
from .measure import (
    AtomicMeasure,
    CircleUniformMeasure,
    EmpiricalMeasure,
    NamedCircle,
    certify_two_measures,
    nielsen_gap,
    scc_rotation_integral,
)
from .plmaps import PLMap
from .quasi import certify_two_fixed_points, certify_two_rotation_points
from .report import Report, Section, Table
from .rotation import local_rotation_number
from .spaces import Polyline, Space, SpaceKind
from .util import parse_number
from .wordgeom import GenSet, ball, translation_length, word_norm

_SPACE_KINDS = {k.value: k for k in SpaceKind}

# family name -> (space kinds, required parameter keys)
FAMILIES = {
    "identity": (tuple(SpaceKind), ()),
    "rigid_rotation": ((SpaceKind.CIRCLE,), ("angle",)),
    "pl_circle": ((SpaceKind.CIRCLE,), ("breakpoints", "values")),
    "gradient_time_one": ((SpaceKind.CIRCLE,), ("amplitude",)),
    "annulus_twist": ((SpaceKind.ANNULUS,), ("rho0", "rho1")),
    "torus_shear": ((SpaceKind.CIRCLE_X_COMPLINE,), ("n",)),
    "cosine_twist": ((SpaceKind.TORUS2,), ("amplitude",)),
    "numeric_sampled": (
        (SpaceKind.CIRCLE, SpaceKind.ANNULUS, SpaceKind.TORUS2),
        ("source", "resolution"),
    ),
}

FAMILY_DOC = {
    "identity": "the identity map (any space)",
    "rigid_rotation": "circle rotation; angle = rational or decimal",
    "pl_circle": "exact PL circle map; breakpoints/values = ; separated rationals",
    "gradient_time_one": "north-south map s -> s + a sin(2 pi s); |amplitude| <= 0.15",
    "annulus_twist": "(s,r) -> (s + (1-r) rho0 + r rho1, r)",
    "torus_shear": "(t,x) -> (t + |x+n| - |x|, x+n) on R/Z x (R u {oo})",
    "cosine_twist": "(s1,s2) -> (s1 + a (1 - cos 2 pi s2)/2, s2) on the torus",
    "numeric_sampled": "sample another declared homeo on a grid; source = name, resolution = N",
}

ANALYSIS_KEYS = {
    "k": {"g", "points", "powers"},
    "seminorm": {"g", "resolution"},
    "gcocycle": {"g", "at", "range"},
    "rot": {"g", "at", "budget", "diagnostic"},
    "defect": {"g", "x", "y", "range"},
    "certify-rotation": {"g", "x", "y", "genset", "budget", "diagnostic"},
    "certify-fixed": {"g", "x", "y", "path", "genset"},
    "nielsen": {"g", "mu", "nu", "genset"},
    "scc": {"g", "circle", "budget"},
    "ball": {"genset", "radius"},
    "wordnorm": {"g", "genset", "rmax"},
    "tau": {"g", "genset", "budget", "certificates"},
}

_SECTION_KEYS = {
    "space": {"kind", "pairing"},
    "point": {"coords"},
    "path": {"vertices", "windings"},
    "measure": {"kind", "circle", "points", "weights", "start", "map", "length", "resolution"},
    "genset": {"generators", "resolution"},
    "budgets": {
        "rot",
        "diagnostic",
        "defect",
        "scc",
        "tau",
        "ball_cap",
        "seminorm_resolution",
        "quadrature",
    },
}

_DEFAULT_BUDGETS = {
    "rot": None,  # per-flavor default inside local_rotation_number
    "diagnostic": 64,
    "defect": 16,
    "scc": 10**4,
    "tau": 6,
    "ball_cap": None,
    "seminorm_resolution": 64,
    "quadrature": 1024,
}


@dataclass
class _SectionData:
    kind: str
    name: str
    line: int
    entries: dict = field(default_factory=dict)  # key -> (value string, line)


@dataclass
class Scenario:
    """Parsed scenario file, before object construction."""

    space: _SectionData
    homeos: dict
    points: dict
    paths: dict
    measures: dict
    gensets: dict
    budgets: dict  # key -> (value string, line)
    analyses: list


def parse_scenario(text: str) -> Scenario:
    sections = []
    current = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("["):
            if not line.endswith("]"):
                raise ScenarioError("unterminated section header", lineno)
            inner = line[1:-1].strip()
            parts = inner.split(None, 1)
            kind = parts[0]
            name = parts[1].strip() if len(parts) > 1 else ""
            if kind not in ("space", "homeo", "point", "path", "measure", "genset", "budgets", "analysis"):
                raise ScenarioError(f"unknown section type [{kind}]", lineno)
            if kind in ("space", "budgets"):
                if name:
                    raise ScenarioError(f"[{kind}] takes no name", lineno)
            elif not name:
                raise ScenarioError(f"[{kind}] needs a name", lineno)
            current = _SectionData(kind, name, lineno)
            sections.append(current)
            continue
        if "=" not in line:
            raise ScenarioError(f"expected 'key = value', got {line!r}", lineno)
        if current is None:
            raise ScenarioError("key outside any section", lineno)
        key, value = (part.strip() for part in line.split("=", 1))
        if key in current.entries:
            raise ScenarioError(f"duplicate key {key!r} in [{current.kind} {current.name}]", lineno)
        current.entries[key] = (value, lineno)

    named = {"homeo": {}, "point": {}, "path": {}, "measure": {}, "genset": {}}
    space = None
    budgets = {}
    analyses = []
    for sec in sections:
        if sec.kind == "space":
            if space is not None:
                raise ScenarioError("duplicate [space] section", sec.line)
            _check_keys(sec, _SECTION_KEYS["space"])
            space = sec
        elif sec.kind == "budgets":
            _check_keys(sec, _SECTION_KEYS["budgets"])
            budgets.update(sec.entries)
        elif sec.kind == "analysis":
            analyses.append(sec)
        else:
            if sec.name in named[sec.kind]:
                raise ScenarioError(f"duplicate [{sec.kind} {sec.name}]", sec.line)
            if sec.kind in _SECTION_KEYS:
                _check_keys(sec, _SECTION_KEYS[sec.kind])
            named[sec.kind][sec.name] = sec
    if space is None:
        raise ScenarioError("missing [space] section", 1)
    seen_labels = set()
    for sec in analyses:
        if sec.name in seen_labels:
            raise ScenarioError(f"duplicate analysis label {sec.name!r}", sec.line)
        seen_labels.add(sec.name)
    return Scenario(
        space,
        named["homeo"],
        named["point"],
        named["path"],
        named["measure"],
        named["genset"],
        budgets,
        analyses,
    )


def _check_keys(sec: _SectionData, allowed: set):
    for key, (_, lineno) in sec.entries.items():
        if key not in allowed:
            raise ScenarioError(
                f"unknown key {key!r} in [{sec.kind} {sec.name}]".replace("[ ", "["),
                lineno,
            )


def _get(sec: _SectionData, key, required=True, default=None):
    if key not in sec.entries:
        if required:
            raise ScenarioError(
                f"missing key {key!r} in [{sec.kind} {sec.name}]".replace(" ]", "]"),
                sec.line,
            )
        return default, sec.line
    return sec.entries[key]


def _number(text, lineno):
    try:
        return parse_number(text)
    except ValueError as exc:
        raise ScenarioError(str(exc), lineno) from exc


def _int(text, lineno):
    value = _number(text, lineno)
    if isinstance(value, Fraction) and value.denominator == 1:
        return int(value)
    raise ScenarioError(f"expected an integer, got {text!r}", lineno)


def _tuple(text, lineno):
    return tuple(_number(part, lineno) for part in text.split(","))


def _tuple_list(text, lineno):
    return [_tuple(part, lineno) for part in text.split(";") if part.strip()]


def _name_list(text):
    return [part.strip() for part in text.split(",") if part.strip()]


class ScenarioContext:
    """Constructed objects plus the executor for the analysis list."""

    def __init__(self, scenario: Scenario, seed: int = 0, budget_override: int | None = None):
        self.scenario = scenario
        self.seed = seed
        self.rng = random.Random(seed)
        self.budget_override = budget_override
        self.space = self._build_space(scenario.space)
        self.homeos = {}
        for name, sec in scenario.homeos.items():
            self.homeos[name] = self._build_homeo(sec)
        self.points = {
            name: self._build_point(sec) for name, sec in scenario.points.items()
        }
        self.paths = {name: self._build_path(sec) for name, sec in scenario.paths.items()}
        self.measures = {
            name: self._build_measure(sec) for name, sec in scenario.measures.items()
        }
        self.gensets = {
            name: self._build_genset(sec) for name, sec in scenario.gensets.items()
        }
        self.budgets = dict(_DEFAULT_BUDGETS)
        for key, (text, lineno) in scenario.budgets.items():
            self.budgets[key] = _int(text, lineno)
        self.certificates = {}  # analysis label -> Certificate

    # -- object construction -------------------------------------------
    def _build_space(self, sec):
        kind_text, lineno = _get(sec, "kind")
        if kind_text not in _SPACE_KINDS:
            raise ScenarioError(
                f"unknown space kind {kind_text!r}; expected one of {sorted(_SPACE_KINDS)}",
                lineno,
            )
        kind = _SPACE_KINDS[kind_text]
        pairing_text, plineno = _get(sec, "pairing")
        pairing = tuple(_int(p, plineno) for p in pairing_text.split(","))
        try:
            return Space(kind, pairing)
        except ValueError as exc:
            raise ScenarioError(str(exc), plineno) from exc

    def _build_homeo(self, sec):
        ops = [k for k in ("family", "power", "compose", "inverse") if k in sec.entries]
        if len(ops) != 1:
            raise ScenarioError(
                "a [homeo] needs exactly one of family/power/compose/inverse", sec.line
            )
        op = ops[0]
        if op == "power":
            text, lineno = sec.entries["power"]
            _check_keys(sec, {"power"})
            parts = _name_list(text)
            if len(parts) != 2:
                raise ScenarioError("power = <homeo>, <n>", lineno)
            return power(self._homeo(parts[0], lineno), _int(parts[1], lineno))
        if op == "compose":
            text, lineno = sec.entries["compose"]
            _check_keys(sec, {"compose"})
            names = _name_list(text)
            if len(names) < 2:
                raise ScenarioError("compose = <homeo>, <homeo>[, ...]", lineno)
            out = self._homeo(names[-1], lineno)
            for name in reversed(names[:-1]):
                out = compose(self._homeo(name, lineno), out)
            return out
        if op == "inverse":
            text, lineno = sec.entries["inverse"]
            _check_keys(sec, {"inverse"})
            return self._homeo(text.strip(), lineno).inverse()

        family, lineno = sec.entries["family"]
        if family not in FAMILIES:
            raise ScenarioError(f"unknown family {family!r}", lineno)
        kinds, params = FAMILIES[family]
        _check_keys(sec, {"family", *params})
        if self.space.kind not in kinds:
            raise ScenarioError(
                f"family {family} is not defined on {self.space.kind.value}", lineno
            )
        get = lambda key: _get(sec, key)
        if family == "identity":
            return Identity(self.space)
        if family == "rigid_rotation":
            text, ln = get("angle")
            return RigidRotation(self.space, _number(text, ln))
        if family == "gradient_time_one":
            text, ln = get("amplitude")
            try:
                return GradientTimeOne(self.space, _number(text, ln))
            except ValueError as exc:
                raise ScenarioError(str(exc), ln) from exc
        if family == "annulus_twist":
            t0, l0 = get("rho0")
            t1, l1 = get("rho1")
            return AnnulusTwist(self.space, _number(t0, l0), _number(t1, l1))
        if family == "torus_shear":
            text, ln = get("n")
            return TorusShear(self.space, _int(text, ln))
        if family == "cosine_twist":
            text, ln = get("amplitude")
            return CosineTwist(self.space, _number(text, ln))
        if family == "pl_circle":
            btext, bl = get("breakpoints")
            vtext, vl = get("values")
            breaks = [_number(p, bl) for p in btext.split(";")]
            values = [_number(p, vl) for p in vtext.split(";")]
            if len(breaks) != len(values):
                raise ScenarioError("breakpoints and values must have equal length", vl)
            try:
                return PLCircleMap(self.space, PLMap.from_pairs(breaks, values))
            except ValueError as exc:
                raise ScenarioError(str(exc), bl) from exc
        # numeric_sampled
        stext, sl = get("source")
        rtext, rl = get("resolution")
        return NumericSampledMap.from_homeo(self._homeo(stext.strip(), sl), _int(rtext, rl))

    def _homeo(self, name, lineno):
        if name not in self.homeos:
            raise ScenarioError(f"unknown homeo {name!r}", lineno)
        return self.homeos[name]

    def _build_point(self, sec):
        text, lineno = _get(sec, "coords")
        coords = _tuple(text, lineno)
        try:
            return self.space.validate_point(coords)
        except DeckrotError as exc:
            raise ScenarioError(str(exc), lineno) from exc

    def _build_path(self, sec):
        vtext, vl = _get(sec, "vertices")
        wtext, wl = _get(sec, "windings")
        vertices = _tuple_list(vtext, vl)
        windings = [
            tuple(int(x) for x in ws) for ws in _tuple_list(wtext, wl)
        ]
        try:
            return Polyline(self.space, vertices, windings)
        except DeckrotError as exc:
            raise ScenarioError(str(exc), wl) from exc

    def _build_measure(self, sec):
        kind, lineno = _get(sec, "kind")
        try:
            if kind == "atomic":
                ptext, pl = _get(sec, "points")
                points = _tuple_list(ptext, pl)
                weights = None
                if "weights" in sec.entries:
                    wtext, wl = sec.entries["weights"]
                    weights = [_number(w, wl) for w in wtext.split(";")]
                return AtomicMeasure(self.space, points, weights)
            if kind == "circle":
                ctext, cl = _get(sec, "circle")
                resolution = self._optional_int(sec, "resolution", self_key="quadrature")
                circle = NamedCircle(self.space, ctext.strip())
                return CircleUniformMeasure(circle, resolution or 1024)
            if kind == "empirical":
                stext, sl = _get(sec, "start")
                mtext, ml = _get(sec, "map")
                ltext, ll = _get(sec, "length")
                return EmpiricalMeasure(
                    self.space,
                    _tuple(stext, sl),
                    self._homeo(mtext.strip(), ml),
                    _int(ltext, ll),
                )
        except ScenarioError:
            raise
        except DeckrotError as exc:
            raise ScenarioError(str(exc), lineno) from exc
        raise ScenarioError(f"unknown measure kind {kind!r}", lineno)

    def _optional_int(self, sec, key, self_key=None):
        if key in sec.entries:
            text, lineno = sec.entries[key]
            return _int(text, lineno)
        return None

    def _build_genset(self, sec):
        text, lineno = _get(sec, "generators")
        names = _name_list(text)
        gens = [self._homeo(n, lineno) for n in names]
        resolution = self._optional_int(sec, "resolution") or 64
        try:
            return GenSet(gens, names=names, resolution=resolution)
        except DeckrotError as exc:
            raise ScenarioError(str(exc), lineno) from exc

    # -- reference resolution for analyses ------------------------------
    def _ref(self, table, label, sec, key):
        text, lineno = _get(sec, key)
        name = text.strip()
        if name not in table:
            raise ScenarioError(f"unknown {label} {name!r}", lineno)
        return table[name]

    def _budget(self, sec, key="budget", default_key="rot"):
        if key in sec.entries:
            text, lineno = sec.entries[key]
            return _int(text, lineno)
        if self.budget_override is not None:
            return self.budget_override
        return self.budgets.get(default_key)


def run_scenario(
    text: str,
    seed: int = 0,
    budget_override: int | None = None,
    source: str = "<scenario>",
) -> Report:
    """Parse and execute a scenario, returning the Report."""
    scenario = parse_scenario(text)
    ctx = ScenarioContext(scenario, seed, budget_override)
    report = Report()
    report.header.append(f"scenario: {source}")
    report.header.append(f"seed: {seed}")
    report.header.append(
        f"space: {ctx.space.kind.value}  pairing: {render_pairing(ctx.space.pairing)}"
    )
    for sec in scenario.analyses:
        op, lineno = _get(sec, "op")
        if op not in ANALYSIS_KEYS:
            raise ScenarioError(
                f"unknown analysis {op!r}; expected one of {sorted(ANALYSIS_KEYS)}", lineno
            )
        _check_keys(sec, ANALYSIS_KEYS[op] | {"op"})
        section = report.section(sec.name, op)
        _ANALYSES[op](ctx, sec, section)
    return report


def render_pairing(pairing):
    return "(" + ", ".join(str(p) for p in pairing) + ")"


# -- analysis executors ----------------------------------------------------


def _an_k(ctx, sec, out: Section):
    g = ctx._ref(ctx.homeos, "homeo", sec, "g")
    ptext, pl = _get(sec, "points")
    point_names = _name_list(ptext)
    points = []
    for name in point_names:
        if name not in ctx.points:
            raise ScenarioError(f"unknown point {name!r}", pl)
        points.append((name, ctx.points[name]))
    wtext, wl = _get(sec, "powers", required=False, default="1")
    powers = _parse_powers(wtext or "1", wl)
    out.add("g", g.describe())
    rows = []
    for n in powers:
        for name, pt in points:
            value = k_power_eval(g, pt, n)
            rows.append((n, name, value))
    for n, name, value in rows:
        out.add(f"K(g^{n})({name})", value)
    out.tables.append(Table(f"{sec.name}", ("n", "point", "value"), rows))


def _parse_powers(text, lineno):
    text = text.strip()
    if ".." in text:
        lo, hi = text.split("..", 1)
        return list(range(_int(lo, lineno), _int(hi, lineno) + 1))
    return [_int(p, lineno) for p in text.split(",")]


def _an_seminorm(ctx, sec, out: Section):
    g = ctx._ref(ctx.homeos, "homeo", sec, "g")
    resolution = ctx._optional_int(sec, "resolution") or ctx.budgets["seminorm_resolution"]
    est = seminorm(g, resolution)
    out.add("g", g.describe())
    out.add("seminorm", est.value)
    out.add("resolution", est.resolution)
    out.add("certified_bound", est.certified_bound)


def _an_gcocycle(ctx, sec, out: Section):
    g = ctx._ref(ctx.homeos, "homeo", sec, "g")
    at = ctx._ref(ctx.points, "point", sec, "at")
    rtext, rl = _get(sec, "range")
    N = _int(rtext, rl)
    out.add("g", g.describe())
    out.add("at", at)
    rows = []
    sup = 0
    for m in range(-N, N + 1):
        gm = power(g, m)
        for n in range(-N, N + 1):
            val = g_cocycle(at, gm, power(g, n))
            rows.append((m, n, val))
            sup = max(sup, abs(val))
    out.add("sup |G|", sup)
    out.tables.append(Table(f"{sec.name}", ("m", "n", "value"), rows))


def _an_rot(ctx, sec, out: Section):
    g = ctx._ref(ctx.homeos, "homeo", sec, "g")
    at = ctx._ref(ctx.points, "point", sec, "at")
    budget = ctx._budget(sec)
    diag = ctx._optional_int(sec, "diagnostic") or ctx.budgets["diagnostic"]
    est = local_rotation_number(at, g, budget, diag)
    out.add("g", g.describe())
    out.add("at", at)
    out.add("r", est.r)
    out.add("rot", est.rot)
    out.add("classical_rot", est.classical_rot)
    out.add("n_used", est.n_used)
    out.add("residual_band", est.residual_band)
    out.add("bounded_verdict", est.bounded_verdict.value)
    out.add("g_table_sup", est.diagnostic.sup)
    out.add("g_table_slope", est.diagnostic.slope_per_doubling)


def _an_defect(ctx, sec, out: Section):
    from .quasi import defect_estimate

    g = ctx._ref(ctx.homeos, "homeo", sec, "g")
    x = ctx._ref(ctx.points, "point", sec, "x")
    y = ctx._ref(ctx.points, "point", sec, "y")
    rng_n = ctx._optional_int(sec, "range") or ctx.budgets["defect"]
    est = defect_estimate(x, y, g, rng_n)
    out.add("g", g.describe())
    out.add("x", x)
    out.add("y", y)
    out.add("table_range", est.table_range)
    out.add("sampled_defect", est.sampled_defect)
    out.add("g_table_bound", est.g_table_bound)


def _an_certify_rotation(ctx, sec, out: Section):
    g = ctx._ref(ctx.homeos, "homeo", sec, "g")
    x = ctx._ref(ctx.points, "point", sec, "x")
    y = ctx._ref(ctx.points, "point", sec, "y")
    gens = None
    if "genset" in sec.entries:
        gens = ctx._ref(ctx.gensets, "genset", sec, "genset")
    budget = ctx._budget(sec)
    diag = ctx._optional_int(sec, "diagnostic") or ctx.budgets["diagnostic"]
    kwargs = {"generators": gens, "diagnostic_range": diag}
    if budget is not None:
        kwargs["budget"] = budget
    cert = certify_two_rotation_points(x, y, g, **kwargs)
    ctx.certificates[sec.name] = cert
    out.add("g", g.describe())
    out.add_certificate(cert)


def _an_certify_fixed(ctx, sec, out: Section):
    g = ctx._ref(ctx.homeos, "homeo", sec, "g")
    x = ctx._ref(ctx.points, "point", sec, "x")
    y = ctx._ref(ctx.points, "point", sec, "y")
    path = None
    if "path" in sec.entries:
        path = ctx._ref(ctx.paths, "path", sec, "path")
    gens = None
    if "genset" in sec.entries:
        gens = ctx._ref(ctx.gensets, "genset", sec, "genset")
    cert = certify_two_fixed_points(x, y, g, path=path, generators=gens)
    ctx.certificates[sec.name] = cert
    out.add("g", g.describe())
    out.add_certificate(cert)


def _an_nielsen(ctx, sec, out: Section):
    g = ctx._ref(ctx.homeos, "homeo", sec, "g")
    mu = ctx._ref(ctx.measures, "measure", sec, "mu")
    nu = ctx._ref(ctx.measures, "measure", sec, "nu")
    gens = None
    if "genset" in sec.entries:
        gens = ctx._ref(ctx.gensets, "genset", sec, "genset")
    result = nielsen_gap(mu, nu, g)
    out.add("g", g.describe())
    out.add("mu", mu.describe())
    out.add("nu", nu.describe())
    out.add("gap", result.gap)
    out.add("tolerance", result.tolerance)
    out.add("equivalent", result.equivalent)
    cert = certify_two_measures(mu, nu, g, generators=gens)
    ctx.certificates[sec.name] = cert
    out.add_certificate(cert)


def _an_scc(ctx, sec, out: Section):
    g = ctx._ref(ctx.homeos, "homeo", sec, "g")
    ctext, cl = _get(sec, "circle")
    try:
        circle = NamedCircle(ctx.space, ctext.strip())
    except DeckrotError as exc:
        raise ScenarioError(str(exc), cl) from exc
    budget = ctx._budget(sec, default_key="scc")
    est = scc_rotation_integral(circle, g, budget or 10**4)
    out.add("g", g.describe())
    out.add("circle", circle.label)
    out.add("rotation_number", est.rotation_number)
    out.add("error_heuristic", est.error_heuristic)
    out.add("pairing", est.pairing)
    out.add("product", est.product)


def _an_ball(ctx, sec, out: Section):
    gens = ctx._ref(ctx.gensets, "genset", sec, "genset")
    rtext, rl = _get(sec, "radius")
    radius = _int(rtext, rl)
    result = ball(gens, radius, ctx.budgets["ball_cap"])
    out.add("generators", ", ".join(gens.names))
    out.add("C", gens.C)
    out.add("radius_completed", result.radius_completed)
    out.add("truncated", result.truncated)
    rows = [(r, result.sizes[r]) for r in range(len(result.sizes))]
    for r, size in rows:
        out.add(f"|B({r})|", size)
    out.tables.append(Table(f"{sec.name}", ("radius", "size"), rows))


def _an_wordnorm(ctx, sec, out: Section):
    g = ctx._ref(ctx.homeos, "homeo", sec, "g")
    gens = ctx._ref(ctx.gensets, "genset", sec, "genset")
    rtext, rl = _get(sec, "rmax")
    result = word_norm(g, gens, _int(rtext, rl), ctx.budgets["ball_cap"])
    out.add("g", g.describe())
    out.add("exact_norm", result.exact)
    out.add("lower_bound", result.lower_bound)
    out.add("witness", result.witness)
    out.add("searched_radius", result.searched_radius)
    out.add("truncated", result.truncated)


def _an_tau(ctx, sec, out: Section):
    g = ctx._ref(ctx.homeos, "homeo", sec, "g")
    gens = ctx._ref(ctx.gensets, "genset", sec, "genset")
    budget = None
    if "budget" in sec.entries:
        text, lineno = sec.entries["budget"]
        budget = _int(text, lineno)
    budget = budget or ctx.budgets["tau"]
    certs = []
    if "certificates" in sec.entries:
        text, lineno = sec.entries["certificates"]
        for label in _name_list(text):
            if label not in ctx.certificates:
                raise ScenarioError(
                    f"unknown certificate {label!r} (must be an earlier certify/nielsen analysis)",
                    lineno,
                )
            certs.append(ctx.certificates[label])
    est = translation_length(g, gens, budget, certificates=certs, node_cap=ctx.budgets["ball_cap"])
    out.add("g", g.describe())
    out.add("upper_estimate", est.upper_estimate)
    out.add("certificate_lower", est.certificate_lower)
    out.add("tail_estimate", est.tail_estimate)
    out.add("norms", est.norms)
    out.add("truncated", est.truncated)


_ANALYSES = {
    "k": _an_k,
    "seminorm": _an_seminorm,
    "gcocycle": _an_gcocycle,
    "rot": _an_rot,
    "defect": _an_defect,
    "certify-rotation": _an_certify_rotation,
    "certify-fixed": _an_certify_fixed,
    "nielsen": _an_nielsen,
    "scc": _an_scc,
    "ball": _an_ball,
    "wordnorm": _an_wordnorm,
    "tau": _an_tau,
}


def family_catalog() -> str:
    """Deterministic text catalog of spaces and families for the CLI."""
    from .spaces import _CIRCLE_FACTORS

    lines = ["spaces:"]
    for kind in SpaceKind:
        n = len(_CIRCLE_FACTORS[kind])
        lines.append(f"  {kind.value}  (pairing length {n})")
    lines.append("")
    lines.append("families:")
    for name in sorted(FAMILIES):
        kinds, params = FAMILIES[name]
        kind_names = ", ".join(k.value for k in kinds) if len(kinds) < 4 else "any"
        param_text = ", ".join(params) if params else "(no parameters)"
        lines.append(f"  {name}  [{kind_names}]  params: {param_text}")
        lines.append(f"      {FAMILY_DOC[name]}")
    lines.append("")
    lines.append("measures: atomic (points, weights) | circle (circle) | empirical (start, map, length)")
    lines.append("named circles: boundary:0 boundary:1 core:<r> (annulus), infinity (compactified line), s2:<c> (torus), full (circle)")
    lines.append("analyses: " + ", ".join(sorted(ANALYSIS_KEYS)))
    return "\n".join(lines)
