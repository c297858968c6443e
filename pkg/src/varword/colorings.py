"""Total deterministic colorings of binary strings and finite sets.

Three kinds: built-in rules (parameterized), finite tables with a default
within a declared horizon, and derived handles (internal closures produced
by other modules; not serializable). The line-oriented file format is:

    coloring domain=<strings|finsets> colors=<L> kind=<rule|table>
    rule <name> [param=value]...
    horizon <n>
    default <color>
    entry <key> <color>

String keys are '0'/'1' strings with '-' for the empty string; finset keys
are comma-separated integers. Table entries serialize in shortlex key order.
"""

from __future__ import annotations

from typing import Callable, Iterable, Optional, Sequence

from .errors import (
    ColoringSemanticError,
    ColoringSyntaxError,
    DomainMismatch,
    HorizonExceeded,
    PreconditionViolated,
)
from .words import check_bits, iter_bits, shortlex_key

STRINGS = "strings"
FINSETS = "finsets"


class Coloring:
    """Base class: a total deterministic map from its domain to 0..colors-1."""

    domain: str
    colors: Optional[int]
    kind: str

    def eval(self, x):
        raise NotImplementedError

    def max_len(self) -> Optional[int]:
        """Largest evaluable string length / ground element bound, if any."""
        return None

    def _check_domain(self, x):
        if self.domain == STRINGS:
            if not isinstance(x, str):
                raise DomainMismatch(f"expected binary string, got {type(x).__name__}")
            check_bits(x)
        else:
            if isinstance(x, str) or not isinstance(x, (tuple, list, frozenset, set)):
                raise DomainMismatch(f"expected finite set, got {type(x).__name__}")


def _key_text(domain: str, key) -> str:
    if domain == STRINGS:
        return key if key else "-"
    return ",".join(str(i) for i in key)


def _parse_key(domain: str, text: str, line: int):
    if domain == STRINGS:
        if text == "-":
            return ""
        if any(ch not in "01" for ch in text):
            raise ColoringSyntaxError(f"bad string key {text!r}", line)
        return text
    try:
        elems = tuple(int(t) for t in text.split(","))
    except ValueError:
        raise ColoringSyntaxError(f"bad finset key {text!r}", line) from None
    if list(elems) != sorted(set(elems)) or (elems and elems[0] < 0):
        raise ColoringSemanticError(f"line {line}: finset key not strictly increasing: {text!r}")
    return elems


class RuleColoring(Coloring):
    """Named built-in rule with string parameters."""

    kind = "rule"

    def __init__(self, domain: str, colors: int, name: str, params: dict | None = None):
        if colors < 1:
            raise ColoringSemanticError("colors must be >= 1")
        self.domain = domain
        self.colors = colors
        self.name = name
        self.params = dict(params or {})
        self._fn = _build_rule(domain, colors, name, self.params)

    def eval(self, x):
        self._check_domain(x)
        c = self._fn(x)
        if not 0 <= c < self.colors:
            raise ColoringSemanticError(f"rule {self.name} emitted {c} outside 0..{self.colors - 1}")
        return c

    def __repr__(self):
        return f"RuleColoring({self.name}, colors={self.colors}, domain={self.domain})"


class TableColoring(Coloring):
    """Finite lookup table with a default, total up to its horizon."""

    kind = "table"

    def __init__(self, domain: str, colors: int, horizon: int, entries: dict, default: int):
        if colors < 1:
            raise ColoringSemanticError("colors must be >= 1")
        if not 0 <= default < colors:
            raise ColoringSemanticError(f"default {default} outside 0..{colors - 1}")
        self.domain = domain
        self.colors = colors
        self.horizon = horizon
        self.default = default
        self.entries = dict(entries)
        for k, c in self.entries.items():
            if not 0 <= c < colors:
                raise ColoringSemanticError(f"entry {k!r} color {c} outside range")
            size = len(k) if domain == STRINGS else (max(k) + 1 if k else 0)
            if size > horizon:
                raise ColoringSemanticError(f"entry {k!r} beyond horizon {horizon}")

    def eval(self, x):
        self._check_domain(x)
        key = x if self.domain == STRINGS else tuple(sorted(x))
        size = len(key) if self.domain == STRINGS else (max(key) + 1 if key else 0)
        if size > self.horizon:
            raise HorizonExceeded(f"input of size {size} beyond table horizon {self.horizon}")
        return self.entries.get(key, self.default)

    def max_len(self):
        return self.horizon

    def __repr__(self):
        return f"TableColoring(horizon={self.horizon}, {len(self.entries)} entries)"


class DerivedColoring(Coloring):
    """Internal coloring backed by a closure; colors may be an open int set."""

    kind = "derived"

    def __init__(self, domain: str, fn: Callable, colors: Optional[int] = None,
                 label: str = "derived", length_bound: Optional[int] = None):
        self.domain = domain
        self.colors = colors
        self.label = label
        self._fn = fn
        self._length_bound = length_bound

    def eval(self, x):
        self._check_domain(x)
        return self._fn(x)

    def max_len(self):
        return self._length_bound

    def __repr__(self):
        return f"DerivedColoring({self.label})"


class SeqColoring:
    """A sequence of colorings sharing domain and color count."""

    def __init__(self, members: Sequence[Coloring]):
        if not members:
            raise PreconditionViolated("empty coloring sequence")
        d, c = members[0].domain, members[0].colors
        for m in members:
            if m.domain != d or m.colors != c:
                raise ColoringSemanticError("sequence members disagree on domain/colors")
        self.members = list(members)
        self.domain = d
        self.colors = c

    def __getitem__(self, i):
        return self.members[i]

    def __len__(self):
        return len(self.members)


def _build_rule(domain: str, colors: int, name: str, params: dict) -> Callable:
    def need(domain_wanted):
        if domain != domain_wanted:
            raise ColoringSemanticError(f"rule {name} needs domain={domain_wanted}")

    if name == "constant":
        k = int(params.get("value", 0))
        if not 0 <= k < colors:
            raise ColoringSemanticError(f"constant value {k} outside 0..{colors - 1}")
        return lambda x: k
    if name == "length_mod":
        need(STRINGS)
        return lambda s: len(s) % colors
    if name == "popcount_mod":
        need(STRINGS)
        return lambda s: s.count("1") % colors
    if name == "prefix_table":
        need(STRINGS)
        raw = params.get("map", "")
        table = {}
        if raw:
            for item in raw.split(","):
                key, _, col = item.partition(":")
                table["" if key == "-" else key] = int(col)
        default = int(params.get("default", 0))
        for k, c in table.items():
            check_bits(k)
            if not 0 <= c < colors:
                raise ColoringSemanticError(f"prefix color {c} outside range")
        if not 0 <= default < colors:
            raise ColoringSemanticError(f"default {default} outside range")
        ordered = sorted(table, key=len, reverse=True)

        def by_prefix(s):
            for p in ordered:
                if s.startswith(p):
                    return table[p]
            return default

        return by_prefix
    if name == "min_mod":
        need(FINSETS)
        return lambda s: (min(s) % colors) if s else 0
    if name == "card_mod":
        need(FINSETS)
        return lambda s: len(s) % colors
    raise ColoringSemanticError(f"unknown rule {name!r}")


RULE_NAMES = ("constant", "length_mod", "popcount_mod", "prefix_table", "min_mod", "card_mod")


def parse_coloring(text: str) -> Coloring:
    """Parse a coloring file (see module docstring for the grammar)."""
    header = None
    rule = None
    horizon = None
    default = None
    entries: dict = {}
    entry_lines: dict = {}
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        tag = tokens[0]
        if tag == "coloring":
            fields = {}
            for tok in tokens[1:]:
                k, eq, v = tok.partition("=")
                if not eq:
                    raise ColoringSyntaxError(f"bad header token {tok!r}", ln)
                fields[k] = v
            if set(fields) != {"domain", "colors", "kind"}:
                raise ColoringSyntaxError("header needs domain=, colors=, kind=", ln)
            if fields["domain"] not in (STRINGS, FINSETS):
                raise ColoringSyntaxError(f"bad domain {fields['domain']!r}", ln)
            if fields["kind"] not in ("rule", "table"):
                raise ColoringSyntaxError(f"bad kind {fields['kind']!r}", ln)
            try:
                colors = int(fields["colors"])
            except ValueError:
                raise ColoringSyntaxError("colors must be an integer", ln) from None
            if colors < 1:
                raise ColoringSemanticError(f"line {ln}: colors must be >= 1")
            header = (fields["domain"], colors, fields["kind"])
        elif tag == "rule":
            if len(tokens) < 2:
                raise ColoringSyntaxError("rule line needs a name", ln)
            params = {}
            for tok in tokens[2:]:
                k, eq, v = tok.partition("=")
                if not eq:
                    raise ColoringSyntaxError(f"bad rule param {tok!r}", ln)
                params[k] = v
            rule = (tokens[1], params)
        elif tag == "horizon":
            if len(tokens) != 2:
                raise ColoringSyntaxError("horizon line needs one integer", ln)
            horizon = int(tokens[1])
        elif tag == "default":
            if len(tokens) != 2:
                raise ColoringSyntaxError("default line needs one color", ln)
            default = int(tokens[1])
        elif tag == "entry":
            if len(tokens) != 3:
                raise ColoringSyntaxError("entry line needs key and color", ln)
            if header is None:
                raise ColoringSyntaxError("entry before header", ln)
            key = _parse_key(header[0], tokens[1], ln)
            if key in entries:
                raise ColoringSemanticError(
                    f"line {ln}: duplicate table key {tokens[1]!r} (first at line {entry_lines[key]})"
                )
            entries[key] = int(tokens[2])
            entry_lines[key] = ln
        else:
            raise ColoringSyntaxError(f"unknown directive {tag!r}", ln)
    if header is None:
        raise ColoringSyntaxError("missing 'coloring' header line", 1)
    domain, colors, kind = header
    if kind == "rule":
        if rule is None:
            raise ColoringSyntaxError("kind=rule without a rule line", 1)
        if horizon is not None or default is not None or entries:
            raise ColoringSemanticError("rule colorings take no table lines")
        return RuleColoring(domain, colors, rule[0], rule[1])
    if rule is not None:
        raise ColoringSemanticError("table colorings take no rule line")
    if horizon is None:
        raise ColoringSyntaxError("kind=table needs a horizon line", 1)
    if default is None:
        raise ColoringSyntaxError("kind=table needs a default line", 1)
    return TableColoring(domain, colors, horizon, entries, default)


def serialize_coloring(c: Coloring) -> str:
    """Canonical text form; parse/serialize round-trip on canonical files."""
    if isinstance(c, RuleColoring):
        lines = [f"coloring domain={c.domain} colors={c.colors} kind=rule"]
        params = " ".join(f"{k}={v}" for k, v in sorted(c.params.items()))
        lines.append(f"rule {c.name}" + (f" {params}" if params else ""))
        return "\n".join(lines) + "\n"
    if isinstance(c, TableColoring):
        lines = [
            f"coloring domain={c.domain} colors={c.colors} kind=table",
            f"horizon {c.horizon}",
            f"default {c.default}",
        ]
        if c.domain == STRINGS:
            keys = sorted(c.entries, key=shortlex_key)
        else:
            keys = sorted(c.entries, key=lambda s: ((max(s) + 1) if s else 0, s))
        for k in keys:
            lines.append(f"entry {_key_text(c.domain, k)} {c.entries[k]}")
        return "\n".join(lines) + "\n"
    raise PreconditionViolated(f"{c!r} has no file form")


def coloring_from_file(path) -> Coloring:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_coloring(fh.read())


def coloring_to_file(c: Coloring, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(serialize_coloring(c))


def table_from_assignment(bits: dict, horizon: int) -> TableColoring:
    """Pack a total 0/1 string assignment into a table (1-entries + default 0)."""
    entries = {s: 1 for s, b in bits.items() if b == 1}
    return TableColoring(STRINGS, 2, horizon, entries, 0)


def eval_many(c: Coloring, inputs: Iterable) -> list:
    return [c.eval(x) for x in inputs]
