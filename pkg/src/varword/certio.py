"""Line-oriented `cert v1` serialization for certificates, level sequences,
and solution reports. One record per line: `key value...`; '-' stands for
the empty string."""

from __future__ import annotations

from typing import Optional, Sequence, Union

from .certificates import GammaCertificate, ValidityCertificate, _index_strings
from .colorings import Coloring, SeqColoring
from .errors import ColoringSyntaxError, ColoringSemanticError
from .levels import Level, LevelSequence, WitnessChain, derive_level_coloring
from .search import SolutionReport
from .words import VarWord, parse_word, word_text

MAGIC = "cert v1"


def _s(text: str) -> str:
    return text if text else "-"


def _untok(token: str) -> str:
    return "" if token == "-" else token


def _ints(xs) -> str:
    return ",".join(str(x) for x in xs) if xs else "-"


def _parse_ints(token: str) -> tuple[int, ...]:
    if token == "-":
        return ()
    return tuple(int(t) for t in token.split(","))


def _gamma_lines(g: GammaCertificate) -> list[str]:
    lines = [
        f"universe {_ints(g.universe)}",
        f"L {_ints(g.L)}",
        f"original {_s(g.original)}",
        f"base {_s(g.base)}",
        f"budget {g.budget}",
        f"item4 {'none' if g.item4_horizon is None else g.item4_horizon}",
    ]
    for color, restart in g.reset_log:
        lines.append(f"reset {color} {_s(restart)}")
    for eta in g.index_order:
        lines.append(f"tau {_ints(eta)} {_s(g.gamma[eta])}")
    lines.append(f"rho~ {_s(g.rho_tilde)}")
    return lines


def serialize_cert(cert: Union[GammaCertificate, ValidityCertificate]) -> str:
    if isinstance(cert, ValidityCertificate):
        head = [MAGIC, "kind validity", f"ell {cert.ell}", f"P {_ints(cert.P)}"]
        return "\n".join(head + _gamma_lines(cert.gamma)) + "\n"
    return "\n".join([MAGIC, "kind gamma"] + _gamma_lines(cert)) + "\n"


def _records(text: str) -> list[tuple[int, list[str]]]:
    out = []
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line and not line.startswith("#"):
            out.append((ln, line.split()))
    if not out or " ".join(out[0][1]) != MAGIC:
        raise ColoringSyntaxError(f"expected leading '{MAGIC}' line", 1)
    return out[1:]


def _collect_gamma(records) -> GammaCertificate:
    fields: dict = {"reset": [], "tau": []}
    for ln, toks in records:
        key = toks[0]
        if key == "reset":
            fields["reset"].append((int(toks[1]), _untok(toks[2])))
        elif key == "tau":
            fields["tau"].append((_parse_ints(toks[1]), _untok(toks[2])))
        elif key in ("universe", "L", "original", "base", "budget", "item4", "rho~"):
            fields[key] = toks[1]
        else:
            raise ColoringSyntaxError(f"unknown certificate field {key!r}", ln)
    universe = _parse_ints(fields["universe"])
    L = _parse_ints(fields["L"])
    order = _index_strings(list(L))
    gamma = dict(fields["tau"])
    if list(gamma) != order:
        raise ColoringSemanticError("tau lines do not match shortlex order over L")
    item4 = None if fields["item4"] == "none" else int(fields["item4"])
    return GammaCertificate(
        universe=universe, L=L, index_order=tuple(order), gamma=gamma,
        original=_untok(fields["original"]), base=_untok(fields["base"]),
        rho_tilde=_untok(fields["rho~"]), reset_log=tuple(fields["reset"]),
        item4_horizon=item4, budget=int(fields["budget"]),
    )


def parse_cert(text: str) -> Union[GammaCertificate, ValidityCertificate]:
    records = _records(text)
    if not records or records[0][1][0] != "kind":
        raise ColoringSyntaxError("missing kind line", 2)
    kind = records[0][1][1]
    rest = records[1:]
    if kind == "gamma":
        return _collect_gamma(rest)
    if kind == "validity":
        ell = None
        P = None
        body = []
        for ln, toks in rest:
            if toks[0] == "ell":
                ell = int(toks[1])
            elif toks[0] == "P":
                P = _parse_ints(toks[1])
            else:
                body.append((ln, toks))
        g = _collect_gamma(body)
        if ell is None or P is None:
            raise ColoringSyntaxError("validity certificate needs ell and P", 2)
        if P != g.P:
            raise ColoringSemanticError("P line disagrees with the chain lengths")
        return ValidityCertificate(rho_tilde=g.rho_tilde, P=P, gamma=g, ell=ell)
    raise ColoringSyntaxError(f"unknown certificate kind {kind!r}", 2)


def serialize_solution(rep: SolutionReport) -> str:
    lines = [
        MAGIC,
        "kind solution",
        f"strategy {rep.strategy}",
        f"color {rep.color}",
        f"depth {rep.depth_checked}",
        f"word {word_text(rep.word)}",
    ]
    if rep.base is not None:
        lines.append(f"base {_s(rep.base)}")
    if rep.blocks is not None:
        for b in rep.blocks:
            lines.append(f"block {_ints(b)}")
    if rep.chain is not None:
        lines.append(f"chainj0 {rep.chain.j0}")
        for code in rep.chain.codes:
            lines.append(f"chaincode {code}")
    return "\n".join(lines) + "\n"


def parse_solution(text: str) -> SolutionReport:
    records = _records(text)
    fields: dict = {"block": [], "chaincode": []}
    for ln, toks in records:
        key = toks[0]
        if key == "kind":
            if toks[1] != "solution":
                raise ColoringSyntaxError("not a solution record", ln)
        elif key in ("block", "chaincode"):
            fields[key].append(toks[1])
        elif key == "word":
            fields["word"] = " ".join(toks[1:])
        elif key in ("strategy", "color", "depth", "base", "chainj0"):
            fields[key] = toks[1]
        else:
            raise ColoringSyntaxError(f"unknown solution field {key!r}", ln)
    chain = None
    if "chainj0" in fields:
        chain = WitnessChain(j0=int(fields["chainj0"]), tuples=[],
                             codes=[int(c) for c in fields["chaincode"]])
    blocks = tuple(_parse_ints(b) for b in fields["block"]) or None
    return SolutionReport(
        word=parse_word(fields["word"]), color=int(fields["color"]),
        depth_checked=int(fields["depth"]), strategy=fields["strategy"],
        base=_untok(fields["base"]) if "base" in fields else None,
        blocks=blocks, chain=chain,
    )


def serialize_levels(seq: LevelSequence) -> str:
    lines = [MAGIC, "kind levels", f"seq {int(seq.seq_mode)}", f"depth {seq.depth}"]
    for lv in seq.levels:
        lines.append(f"level {lv.index}")
        lines.append(f"lbase {_s(lv.base)}")
        lines.append(f"lcolors {_ints(lv.color_set)}")
        if lv.saturation:
            for p in lv.saturation:
                lines.append(f"lsat {_s(p)}")
        if lv.cert is not None:
            lines.append(f"ell {lv.cert.ell}")
            lines.append(f"P {_ints(lv.cert.P)}")
            lines.extend(_gamma_lines(lv.cert.gamma))
    return "\n".join(lines) + "\n"


def parse_levels(text: str, coloring: Union[Coloring, SeqColoring, Sequence[Coloring]]) -> LevelSequence:
    """Rebuild a level sequence against the coloring it was computed from."""
    if isinstance(coloring, (list, tuple)):
        coloring = SeqColoring(coloring)
    seq_mode = isinstance(coloring, SeqColoring)
    records = _records(text)
    chunks: list[list] = []
    meta: dict = {}
    for ln, toks in records:
        if toks[0] == "level":
            chunks.append([])
        elif not chunks:
            meta[toks[0]] = toks[1]
        else:
            chunks[-1].append((ln, toks))
    if meta.get("kind") != "levels":
        raise ColoringSyntaxError("not a levels record", 2)
    if bool(int(meta["seq"])) != seq_mode:
        raise ColoringSemanticError("seq flag disagrees with the coloring given")
    levels: list[Level] = []
    current: Optional[Coloring] = coloring[0] if seq_mode else coloring
    for i, chunk in enumerate(chunks):
        base = None
        colors = None
        sat: list[str] = []
        certy = []
        for ln, toks in chunk:
            if toks[0] == "lbase":
                base = _untok(toks[1])
            elif toks[0] == "lcolors":
                colors = _parse_ints(toks[1])
            elif toks[0] == "lsat":
                sat.append(_untok(toks[1]))
            else:
                certy.append((ln, toks))
        lv = Level(i, base, current, colors, None, tuple(sat) or None)
        if certy:
            ell = P = None
            body = []
            for ln, toks in certy:
                if toks[0] == "ell":
                    ell = int(toks[1])
                elif toks[0] == "P":
                    P = _parse_ints(toks[1])
                else:
                    body.append((ln, toks))
            g = _collect_gamma(body)
            lv.cert = ValidityCertificate(rho_tilde=g.rho_tilde, P=P, gamma=g, ell=ell)
            nxt = coloring[i + 1] if seq_mode else None
            current = derive_level_coloring(lv.cert, current, seq_next=nxt,
                                            label=f"level{i + 1}")
        levels.append(lv)
    return LevelSequence(levels, seq_mode)
