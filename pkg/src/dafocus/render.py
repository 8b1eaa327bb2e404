"""Plain-text and LaTeX (bussproofs) renderings of derivations."""

from __future__ import annotations

import re

from .calculus import Derivation
from .config import sequent_text


def tree_text(d: Derivation, indent: str = "") -> str:
    """Conclusion first, premises indented beneath it."""
    lines = [f"{indent}{sequent_text(d.conclusion)}   [{d.rule}]"]
    for p in d.premises:
        lines.append(tree_text(p, indent + "  "))
    return "\n".join(lines)


_LATEX_OPS = [
    (re.compile(r"\{"), r"\\{"),
    (re.compile(r"\}"), r"\\}"),
    (re.compile(r" up_(\d+) "), r" \\uparrow_{\1} "),
    (re.compile(r" dn_(\d+) "), r" \\downarrow_{\1} "),
    (re.compile(r" odot_(\d+) "), r" \\odot_{\1} "),
    (re.compile(r" up "), r" \\uparrow "),
    (re.compile(r" dn "), r" \\downarrow "),
    (re.compile(r" odot "), r" \\odot "),
    (re.compile(r"\*"), r"\\bullet "),
    (re.compile(r" \+ "), r" \\oplus "),
    (re.compile(r" & "), r" \\& "),
    (re.compile(r"=>"), r"\\Rightarrow"),
    (re.compile(r"<<(.*?)>>"), r"\\fbox{$\1$}"),
]

_RULE_TEX = {"*L": r"\bullet L", "*R": r"\bullet R", "odotL": r"\odot L", "odotR": r"\odot R",
             "upL": r"\uparrow L", "upR": r"\uparrow R", "dnL": r"\downarrow L", "dnR": r"\downarrow R",
             "+L": r"\oplus L", "+R1": r"\oplus R_1", "+R2": r"\oplus R_2",
             "&L1": r"\& L_1", "&L2": r"\& L_2", "&R": r"\& R",
             "\\L": r"\backslash L", "\\R": r"\backslash R",
             "pcut1": r"pcut_1", "pcut2": r"pcut_2", "ncut1": r"ncut_1", "ncut2": r"ncut_2"}

_INF = {0: r"\AxiomC", 1: r"\UnaryInfC", 2: r"\BinaryInfC", 3: r"\TrinaryInfC"}


def sequent_latex(text: str) -> str:
    # backslash first, before other replacements introduce TeX commands
    out = text.replace("\\", r"\backslash ")
    for pat, rep in _LATEX_OPS:
        out = pat.sub(rep, out)
    return out


def latex(d: Derivation) -> str:
    """A bussproofs prooftree environment for d."""
    lines = [r"\begin{prooftree}"]
    _latex(d, lines)
    lines.append(r"\end{prooftree}")
    return "\n".join(lines)


def _latex(d: Derivation, lines: list) -> None:
    for p in d.premises:
        _latex(p, lines)
    if not d.premises:
        lines.append(r"\AxiomC{}")
    rule = _RULE_TEX.get(d.rule, d.rule)
    lines.append(rf"\RightLabel{{${rule}$}}")
    n = max(1, len(d.premises))
    lines.append(f"{_INF[n]}{{${sequent_latex(sequent_text(d.conclusion))}$}}")
