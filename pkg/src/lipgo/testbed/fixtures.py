"""Line-oriented ``key = value`` problem files.

Example::

    # two sines
    name = sines
    interval = 2.7 7.5
    expr = sin(x) + sin(10*x/3)
    lipschitz_f = 4.3
    known_min_x = 5.145735

``name``, ``interval`` and ``expr`` are required.  The derivative is
obtained symbolically unless the expression uses ``abs``.
"""

from __future__ import annotations

from importlib import resources
from pathlib import Path

from ..core import ConfigurationError, LipgoError, Problem
from .expr import ExpressionError, NonDifferentiable, compile_expression, differentiate, parse_expression

KEYS = ("name", "interval", "expr", "lipschitz_f", "lipschitz_df", "known_min_x", "known_min_f")
REQUIRED = ("name", "interval", "expr")


class FixtureError(LipgoError):
    def __init__(self, message: str, source: str = "<fixture>", line: int | None = None):
        where = f"{source}:{line}" if line is not None else source
        super().__init__(f"{where}: {message}")
        self.line = line


def _real(text: str, key: str, source: str, line: int) -> float:
    try:
        return float(text)
    except ValueError:
        raise FixtureError(f"{key}: expected a real number, got {text!r}", source, line) from None


def parse_fixture(text: str, source: str = "<fixture>") -> Problem:
    fields: dict[str, tuple[str, int]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if not sep:
            raise FixtureError(f"expected 'key = value', got {line!r}", source, lineno)
        if key not in KEYS:
            raise FixtureError(f"unknown key {key!r}", source, lineno)
        if key in fields:
            raise FixtureError(f"duplicate key {key!r}", source, lineno)
        fields[key] = (value, lineno)
    for key in REQUIRED:
        if key not in fields:
            raise FixtureError(f"missing required key {key!r}", source)

    bounds, lineno = fields["interval"]
    parts = bounds.split()
    if len(parts) != 2:
        raise FixtureError("interval: expected two reals '<a> <b>'", source, lineno)
    a, b = (_real(p, "interval", source, lineno) for p in parts)
    if not a < b:
        raise FixtureError(f"interval: need a < b, got {a} {b}", source, lineno)

    expr_text, lineno = fields["expr"]
    try:
        ast = parse_expression(expr_text)
    except ExpressionError as exc:
        raise FixtureError(f"expr: {exc}", source, lineno) from exc
    try:
        df = compile_expression(differentiate(ast))
    except NonDifferentiable:
        df = None

    optional = {}
    for key in ("lipschitz_f", "lipschitz_df", "known_min_x", "known_min_f"):
        if key in fields:
            value, lineno = fields[key]
            optional[key] = _real(value, key, source, lineno)
            if key.startswith("lipschitz") and not optional[key] > 0:
                raise FixtureError(f"{key} must be positive", source, lineno)
    try:
        return Problem(
            name=fields["name"][0],
            a=a,
            b=b,
            f=compile_expression(ast),
            df=df,
            known_L=optional.get("lipschitz_f"),
            known_M=optional.get("lipschitz_df"),
            known_min_x=optional.get("known_min_x"),
            known_min_f=optional.get("known_min_f"),
        )
    except ConfigurationError as exc:
        raise FixtureError(str(exc), source) from exc


def load_fixture(path) -> Problem:
    path = Path(path)
    return parse_fixture(path.read_text(encoding="utf-8"), source=str(path))


def shipped_fixture_paths() -> list[Path]:
    """Fixture files bundled with the package, sorted by name."""
    root = resources.files("lipgo.testbed") / "data"
    return sorted(Path(str(p)) for p in root.iterdir() if p.name.endswith(".fix"))


def shipped_fixtures() -> list[Problem]:
    return [load_fixture(p) for p in shipped_fixture_paths()]
