"""Problem files: a sectioned ``key = value`` text format.

::

    # comment
    [group]
    kind = cyclic 3            # cyclic n | abelian n1 n2 .. | torus r | mixed 2 0 | sl2
    [action]
    x = 2                      # variable = weight label
    [theta]
    0 = -2                     # label = rational
    tail + = geometric 1/2 1   # ray = geometric base coeff
    [hilbert]
    0 = 1
    tail + = constant 1        # ray = constant k
    [module]
    dim 0 = 1
    arrow x: 0 -> 2 = [[1]]
    free_orbit = 1, 0          # or: monomials = (0,0), (1,0)
    [frames]
    0 = [[1]]
    [params]
    window = 0, 1, 2           # or: window = box 2
    kappa 0 = 1
    [task]
    bound = 1/1000
    windows = box 1..8

``[hprime]``, ``[candidate]`` and ``[sub]`` take Hilbert-function entries;
``[candidate]`` and ``[sub]`` may repeat. A line such as ``theta 0 = -2``
outside any header is a one-line entry of that section.

Labels: ``2``, ``-1``, ``(1,2)``, ``chi_2``, ``χ_2`` or ``V_3`` (SL2).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from . import linalg as la
from .errors import InputError, ProblemSyntaxError
from .groups import GroupSpec, Label
from .hilbert import ConstantTail, GeometricTail, HilbertFunction, ThetaVector, ZeroTail
from .modules import ActionSpec, EquivariantModule, free_orbit_module, from_monomial_basis

SECTIONS = ("group", "action", "theta", "hilbert", "module", "frames", "params", "task", "hprime", "candidate", "sub")
REPEATABLE = ("candidate", "sub")
TASK_KEYS = ("window_tilde", "windows", "bound", "degree_bound", "samples", "cap", "seed", "subs_exhaustive")


@dataclass(frozen=True)
class Diagnostic:
    line: int
    column: int
    message: str
    expected: str = ""

    def __str__(self):
        tail = f" (expected {self.expected})" if self.expected else ""
        return f"line {self.line}, column {self.column}: {self.message}{tail}"


@dataclass
class ProblemFile:
    group: GroupSpec
    action: ActionSpec | None = None
    theta: ThetaVector | None = None
    hilbert: HilbertFunction | None = None
    module: EquivariantModule | None = None
    frames: dict = field(default_factory=dict)
    window: tuple | None = None
    window_box: int | None = None
    kappa_minus: dict = field(default_factory=dict)
    task: dict = field(default_factory=dict)
    hprime: HilbertFunction | None = None
    candidates: list = field(default_factory=list)
    subs: list = field(default_factory=list)

    def hilbert_function(self) -> HilbertFunction:
        if self.hilbert is not None:
            return self.hilbert
        if self.module is not None:
            return self.module.hilbert
        raise InputError("the problem has neither a [hilbert] section nor a [module]")


# --- lexical helpers -------------------------------------------------------------

_LABEL_PREFIX = re.compile(r"^(?:chi|χ|V)_?", re.IGNORECASE)


def parse_label(g: GroupSpec, text: str) -> Label:
    t = text.strip()
    t = _LABEL_PREFIX.sub("", t) if not t.startswith("(") else t
    try:
        if t.startswith("(") and t.endswith(")"):
            coords = tuple(int(c) for c in t[1:-1].split(",") if c.strip())
        else:
            coords = (int(t),)
    except ValueError:
        raise InputError(f"cannot read label {text!r}") from None
    return g.label(*coords)


def format_label(g: GroupSpec, rho: Label) -> str:
    if g.kind == "sl2":
        return f"V_{rho}"
    if len(rho) == 1:
        return str(rho[0])
    return "(" + ",".join(str(c) for c in rho) + ")"


def parse_rational(text: str) -> Fraction:
    t = text.strip()
    if not re.fullmatch(r"[+-]?\d+(/\d+)?", t):
        raise InputError(f"{text!r} is not an exact rational (p/q or integer)")
    if re.search(r"/0+$", t):
        raise InputError(f"{text!r} has a zero denominator")
    return Fraction(t)


def parse_matrix(text: str) -> tuple:
    t = text.strip()
    if not (t.startswith("[") and t.endswith("]")):
        raise InputError(f"matrix must look like [[a, b], [c, d]], got {text!r}")
    inner = t[1:-1].strip()
    if not inner:
        return ()
    rows = re.findall(r"\[([^\[\]]*)\]", inner)
    if not rows or re.sub(r"\[[^\[\]]*\]", "", inner).replace(",", "").strip():
        raise InputError(f"cannot read matrix {text!r}")
    return la.matrix([[parse_rational(x) for x in r.split(",") if x.strip()] for r in rows])


def format_matrix(m) -> str:
    return "[" + ", ".join("[" + ", ".join(la.fmt(x) for x in row) + "]" for row in m) + "]"


def _split_labels(text: str) -> list:
    # commas inside parentheses belong to a label
    return [p.strip() for p in re.split(r",(?![^()]*\))", text) if p.strip()]


# --- parser ----------------------------------------------------------------------


def _parse_group(entries) -> GroupSpec:
    spec = dict((k, v) for k, v, _ in entries)
    if set(spec) - {"kind"} or "kind" not in spec:
        raise InputError("[group] takes exactly one key: kind")
    words = spec["kind"].split()
    kind, args = words[0].lower(), [int(a) for a in words[1:]]
    if kind == "cyclic" and len(args) == 1:
        return GroupSpec.cyclic(args[0])
    if kind == "abelian" and args:
        return GroupSpec.abelian(*args)
    if kind == "torus" and len(args) <= 1:
        return GroupSpec.torus(args[0] if args else 1)
    if kind == "mixed" and args:
        return GroupSpec("diagonal", tuple(args))
    if kind == "sl2" and not args:
        return GroupSpec.sl2()
    raise InputError(f"unknown group kind {spec['kind']!r}")


def _parse_tail(value: str, kind: str):
    words = value.split()
    if words[0] == "geometric" and len(words) == 3 and kind == "theta":
        return "geometric", (parse_rational(words[1]), parse_rational(words[2]))
    if words[0] == "constant" and len(words) == 2 and kind == "hilbert":
        return "constant", int(parse_rational(words[1]))
    raise InputError(f"bad tail {value!r} for a {kind} section")


def _parse_values(g: GroupSpec, entries, kind: str):
    values = {}
    rays = {}
    zero = False
    for key, value, _ in entries:
        if key.startswith("tail"):
            ray = key[4:].strip()
            if value.strip() == "zero" and not ray:
                zero = True
                continue
            if ray not in ("+", "-"):
                raise InputError(f"tail rays are '+' or '-', got {ray!r}")
            rays[ray] = _parse_tail(value, kind)
            continue
        rho = parse_label(g, key)
        if rho in values:
            raise InputError(f"label {key} given twice")
        values[rho] = parse_rational(value)
    if zero and rays:
        raise InputError("tail = zero conflicts with ray tails")
    if kind == "theta":
        tail = GeometricTail({r: v for r, (_, v) in rays.items()}) if rays else ZeroTail()
        return ThetaVector(g, values, tail)
    if any(v.denominator != 1 for v in values.values()):
        raise InputError("Hilbert function values are integers")
    tail = ConstantTail({r: v for r, (_, v) in rays.items()}) if rays else ZeroTail()
    return HilbertFunction(g, {r: int(v) for r, v in values.items()}, tail)


def _parse_action(g: GroupSpec, entries) -> ActionSpec:
    return ActionSpec(g, [(k.strip(), parse_label(g, v)) for k, v, _ in entries])


_ARROW = re.compile(r"^arrow\s+(\w+)\s*:\s*(.+?)\s*->\s*(.+?)$")


def _parse_module(action: ActionSpec, entries) -> EquivariantModule:
    g = action.group
    dims, arrows = {}, {}
    special = None
    for key, value, _ in entries:
        if key.startswith("dim "):
            dims[parse_label(g, key[4:])] = int(parse_rational(value))
        elif key.startswith("arrow"):
            m = _ARROW.match(key)
            if not m:
                raise InputError(f"cannot read arrow {key!r}")
            var, src, tgt = m.group(1), parse_label(g, m.group(2)), parse_label(g, m.group(3))
            if (var, src) in arrows:
                raise InputError(f"arrow {var} from {src} given twice")
            arrows[(var, src, tgt)] = parse_matrix(value)
        elif key == "free_orbit":
            special = free_orbit_module(action, [parse_rational(x) for x in value.split(",")])
        elif key == "monomials":
            monos = [tuple(int(c) for c in m.split(",")) for m in re.findall(r"\(([^()]*)\)", value)]
            special = from_monomial_basis(action, monos)
        else:
            raise InputError(f"unknown [module] key {key!r}")
    if special is not None:
        if dims or arrows:
            raise InputError("free_orbit / monomials cannot be mixed with dim/arrow lines")
        return special
    return EquivariantModule(action, dims, arrows)


def _parse_params(g: GroupSpec, entries, problem: ProblemFile) -> None:
    for key, value, _ in entries:
        if key == "window":
            v = value.strip()
            if v.startswith("box"):
                problem.window_box = int(v[3:])
            else:
                problem.window = tuple(sorted({parse_label(g, x) for x in _split_labels(v)}, key=g.sort_key))
        elif key.startswith("kappa "):
            problem.kappa_minus[parse_label(g, key[6:])] = parse_rational(value)
        else:
            raise InputError(f"unknown [params] key {key!r}")


def _parse_task(entries) -> dict:
    task = {}
    for key, value, _ in entries:
        if key not in TASK_KEYS:
            raise InputError(f"unknown [task] key {key!r}")
        v = value.strip()
        if key == "bound":
            task[key] = parse_rational(v)
        elif key == "windows":
            m = re.fullmatch(r"box\s+(\d+)\s*\.\.\s*(\d+)", v)
            if not m:
                raise InputError("windows = box a..b")
            task[key] = (int(m.group(1)), int(m.group(2)))
        elif key == "subs_exhaustive":
            if v not in ("true", "false"):
                raise InputError("subs_exhaustive is true or false")
            task[key] = v == "true"
        else:
            task[key] = int(parse_rational(v))
    return task


def _tokenize(text: str):
    """Yield ``(section, key, value, line, column)``, collecting syntax diagnostics."""
    diags = []
    blocks = []
    current = None
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        stripped = line.strip()
        col = len(line) - len(line.lstrip()) + 1
        if stripped.startswith("["):
            name = stripped[1:-1].strip() if stripped.endswith("]") else None
            if name not in SECTIONS:
                diags.append(Diagnostic(no, col, f"unknown section header {stripped!r}", "one of " + ", ".join(SECTIONS)))
                current = None
                continue
            current = [name, [], no]
            blocks.append(current)
            continue
        head = stripped.split(None, 1)
        if (
            head[0] in SECTIONS
            and head[0] not in REPEATABLE
            and len(head) == 2
            and "=" in head[1]
            and not head[1].startswith("=")
        ):
            target = next((b for b in blocks if b[0] == head[0]), None)
            if target is None:
                target = [head[0], [], no]
                blocks.append(target)
            stripped = head[1]
            col += len(head[0]) + 1
        else:
            target = current
        if target is None:
            diags.append(Diagnostic(no, col, "entry outside any section", "[section] header"))
            continue
        if "=" not in stripped:
            diags.append(Diagnostic(no, col, f"cannot read {stripped!r}", "key = value"))
            continue
        key, value = stripped.split("=", 1) if not stripped.startswith("arrow") else _split_arrow(stripped)
        target[1].append((key.strip(), value.strip(), no))
    return blocks, diags


def _split_arrow(text: str) -> tuple:
    i = text.index("=", text.index("->") if "->" in text else 0)
    return text[:i], text[i + 1 :]


def parse_text(text: str) -> ProblemFile:
    blocks, diags = _tokenize(text)
    seen = {}
    for name, entries, no in blocks:
        if name in seen and name not in REPEATABLE:
            diags.append(Diagnostic(no, 1, f"section [{name}] appears twice"))
        seen.setdefault(name, (entries, no))
    if "group" not in seen:
        diags.append(Diagnostic(1, 1, "missing [group] section"))
    if diags:
        raise ProblemSyntaxError(diags)

    def run(name, entries, no, fn):
        try:
            return fn()
        except InputError as exc:
            where = entries[0][2] if entries else no
            raise ProblemSyntaxError([Diagnostic(where, 1, f"[{name}]: {exc}")]) from None

    ge, gno = seen["group"]
    g = run("group", ge, gno, lambda: _parse_group(ge))
    problem = ProblemFile(group=g)
    for name, entries, no in blocks:
        if name == "group":
            continue
        if name == "action":
            problem.action = run(name, entries, no, lambda: _parse_action(g, entries))
        elif name == "theta":
            problem.theta = run(name, entries, no, lambda: _parse_values(g, entries, "theta"))
        elif name == "hilbert":
            problem.hilbert = run(name, entries, no, lambda: _parse_values(g, entries, "hilbert"))
        elif name == "hprime":
            problem.hprime = run(name, entries, no, lambda: _parse_values(g, entries, "hilbert"))
        elif name == "candidate":
            problem.candidates.append(run(name, entries, no, lambda: _parse_values(g, entries, "hilbert")))
        elif name == "sub":
            problem.subs.append(run(name, entries, no, lambda: _parse_values(g, entries, "hilbert")))
        elif name == "params":
            run(name, entries, no, lambda: _parse_params(g, entries, problem))
        elif name == "task":
            problem.task = run(name, entries, no, lambda: _parse_task(entries))
    # modules and frames need the action, whatever the section order
    for name, entries, no in blocks:
        if name == "module":
            if problem.action is None:
                raise ProblemSyntaxError([Diagnostic(no, 1, "[module] needs an [action] section")])
            problem.module = run(name, entries, no, lambda: _parse_module(problem.action, entries))
        elif name == "frames":
            problem.frames = run(
                name, entries, no, lambda: {parse_label(g, k): parse_matrix(v) for k, v, _ in entries}
            )
    return problem


def parse_problem(path) -> ProblemFile:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except (OSError, UnicodeDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from None
    return parse_text(text)


# --- printer ---------------------------------------------------------------------


def _format_values(g: GroupSpec, obj) -> list:
    lines = []
    for rho, v in obj.values:
        lines.append(f"{format_label(g, rho)} = {la.fmt(v) if isinstance(v, Fraction) else v}")
    for ray, spec in obj.tail.rays().items():
        if isinstance(obj.tail, GeometricTail):
            lines.append(f"tail {ray} = geometric {la.fmt(spec[0])} {la.fmt(spec[1])}")
        else:
            lines.append(f"tail {ray} = constant {spec}")
    return lines


def _group_line(g: GroupSpec) -> str:
    if g.kind == "sl2":
        return "sl2"
    if all(n == 0 for n in g.moduli):
        return f"torus {len(g.moduli)}"
    if 0 in g.moduli:
        return "mixed " + " ".join(str(n) for n in g.moduli)
    if len(g.moduli) == 1:
        return f"cyclic {g.moduli[0]}"
    return "abelian " + " ".join(str(n) for n in g.moduli)


def format_problem(p: ProblemFile) -> str:
    g = p.group
    out = ["[group]", f"kind = {_group_line(g)}"]
    if p.action is not None:
        out.append("[action]")
        out += [f"{n} = {format_label(g, w)}" for n, w in p.action.variables]
    if p.theta is not None:
        out.append("[theta]")
        out += _format_values(g, p.theta)
    if p.hilbert is not None:
        out.append("[hilbert]")
        out += _format_values(g, p.hilbert)
    if p.module is not None:
        out.append("[module]")
        out += [f"dim {format_label(g, r)} = {n}" for r, n in p.module.dims.items()]
        for (var, src), mat in p.module.arrows.items():
            tgt = p.module.target(var, src)
            out.append(f"arrow {var}: {format_label(g, src)} -> {format_label(g, tgt)} = {format_matrix(mat)}")
    if p.frames:
        out.append("[frames]")
        out += [f"{format_label(g, r)} = {format_matrix(m)}" for r, m in p.frames.items()]
    if p.window is not None or p.window_box is not None or p.kappa_minus:
        out.append("[params]")
        if p.window is not None:
            out.append("window = " + ", ".join(format_label(g, r) for r in p.window))
        if p.window_box is not None:
            out.append(f"window = box {p.window_box}")
        out += [f"kappa {format_label(g, r)} = {la.fmt(v)}" for r, v in sorted(p.kappa_minus.items(), key=lambda kv: g.sort_key(kv[0]))]
    if p.task:
        out.append("[task]")
        for key in sorted(p.task):
            v = p.task[key]
            if key == "windows":
                out.append(f"windows = box {v[0]}..{v[1]}")
            elif key == "subs_exhaustive":
                out.append(f"subs_exhaustive = {'true' if v else 'false'}")
            else:
                out.append(f"{key} = {la.fmt(v)}")
    if p.hprime is not None:
        out.append("[hprime]")
        out += _format_values(g, p.hprime)
    for section, items in (("candidate", p.candidates), ("sub", p.subs)):
        for hp in items:
            out.append(f"[{section}]")
            out += _format_values(g, hp) or ["tail = zero"]
    return "\n".join(out) + "\n"


def frames_for(p: ProblemFile, dminus) -> Mapping:
    """User frames, with identities filling in the components left unspecified."""
    m = p.module
    frames = {r: la.identity(m.dim(r)) for r in dminus if m.dim(r)}
    frames.update(p.frames)
    return frames
