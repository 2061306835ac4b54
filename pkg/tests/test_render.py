import shutil
import subprocess
from pathlib import Path

import pytest

from nacll.proof import Proof, loads
from nacll.render import latex_formula, render, render_latex, render_text
from nacll.syntax import parse_formula, parse_sequent

PROOFS = Path(__file__).resolve().parent.parent / "corpus" / "proofs"


def test_text_of_a_leaf():
    out = render_text(Proof("Init", parse_sequent("|- (a, a^)")))
    assert out == "Init  |- (a, a^)\n"


def test_text_keeps_rule_sequence():
    proof = loads((PROOFS / "exchange.sexp").read_text())
    lines = render(proof, "text").splitlines()
    assert [l.split()[0] for l in lines] == [n.rule for n in proof.nodes()]
    assert lines[2].startswith("    Tensor [R]")


def test_latex_formula():
    assert latex_formula(parse_formula("(?[i]a^ # (1 * top))")) == \
        r"(?^{i}a^{\perp} \parr (1 \otimes \top))"


def test_render_does_not_alter_proof():
    proof = loads((PROOFS / "zero-classical.sexp").read_text())
    before = repr(proof)
    render(proof, "latex")
    render(proof, "text")
    assert repr(proof) == before


def test_unknown_format():
    with pytest.raises(ValueError):
        render(Proof("Init", parse_sequent("|- (a, a^)")), "html")


@pytest.mark.skipif(shutil.which("pdflatex") is None, reason="pdflatex not installed")
@pytest.mark.parametrize("name", sorted(p.name for p in PROOFS.glob("*.sexp")))
def test_latex_compiles(tmp_path, name):
    tex = tmp_path / "proof.tex"
    tex.write_text(render_latex(loads((PROOFS / name).read_text()), standalone=True))
    done = subprocess.run(["pdflatex", "-interaction=nonstopmode", tex.name], cwd=tmp_path,
                          capture_output=True, timeout=120)
    assert done.returncode == 0, done.stdout[-2000:]
