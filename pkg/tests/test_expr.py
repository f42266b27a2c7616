import random

import pytest

from hopfcalc import (
    QQ, Environment, ExprEvalError, ExprSyntaxError, compose, evaluate, identity, parse,
    swap, tensor, to_text,
)
from hopfcalc.expr import Compose, Id, Name, Swap, Tensor, dump, tokenize
from hopfcalc.qt import adjoint_action, module_braiding


@pytest.fixture(scope="module")
def env(h4):
    return Environment.for_algebra(h4)


def test_parse_shapes():
    ast = parse("m ; cm")
    assert ast == Compose(parts=(Name(ident="m"), Name(ident="cm")))
    ast = parse("(S * S) ; swap[H,H] ; m")
    assert isinstance(ast, Compose) and len(ast.parts) == 3
    assert ast.parts[0] == Tensor(parts=(Name(ident="S"), Name(ident="S")))
    assert ast.parts[1] == Swap(left="H", right="H")
    assert parse("id[ H ]") == Id(space="H")


def test_whitespace_insensitive():
    assert parse("m;cm") == parse("  m \n ;\tcm ")


@pytest.mark.parametrize("text, line, col", [
    ("m *", 1, 4),
    ("m ;\n  ; cm", 2, 3),
    ("swap[H H]", 1, 8),
    ("(m ; cm", 1, 8),
    ("m cm", 1, 3),
    ("m $ cm", 1, 3),
    ("id[swap]", 1, 4),
])
def test_syntax_errors(text, line, col):
    with pytest.raises(ExprSyntaxError) as e:
        parse(text)
    assert (e.value.line, e.value.col) == (line, col)


def test_keywords_are_reserved():
    assert [t.kind for t in tokenize("id swap braid idx")][:4] == ["KEYWORD"] * 3 + ["IDENT"]


def test_counit_law(env, h4):
    assert evaluate("cm ; (cu * id[H])", env) == identity(h4.space)
    assert evaluate("cm ; (id[H] * cu)", env) == identity(h4.space)


def test_antipode_antihomomorphism(env):
    assert evaluate("(S * S) ; swap[H,H] ; m", env) == evaluate("swap[H,H] ; (S * S) ; m", env)
    assert evaluate("(S * S) ; swap[H,H] ; m", env) == evaluate("m ; S", env)


def test_eval_errors(env):
    with pytest.raises(ExprEvalError, match="unbound name 'q'"):
        evaluate("m ; q", env)
    with pytest.raises(ExprEvalError, match="shape mismatch at 'm'"):
        evaluate("m ; m", env)
    with pytest.raises(ExprEvalError, match="unbound space 'K'"):
        evaluate("id[K]", env)
    with pytest.raises(ExprEvalError, match="braid"):
        evaluate("braid[H,H]", env)
    with pytest.raises(ExprEvalError, match="already bound"):
        env.bind("m", identity(env.spaces["H"]))


def test_braid_is_module_braiding(double):
    D, b = double
    env = Environment.for_algebra(D, r=b)
    got = evaluate("braid[V,V]", env)
    assert got == module_braiding(D, b, D.m, D.m)
    assert got != swap(D.space, D.space)


def test_interchange_in_text(env):
    assert evaluate("(S * cm) ; (Sinv * (cu * id[H]))", env) == \
        evaluate("(S ; Sinv) * (cm ; (cu * id[H]))", env)


def test_dump_is_sorted(env):
    f = evaluate("m ; S", env)
    lines = dump(f).splitlines()
    assert lines[0] == "H4⊗H4 -> H4"
    assert len(lines) == 1 + f.nnz
    keys = [(o, i) for o, i, _ in f.entries()]
    assert keys == sorted(keys)
    assert dump(evaluate("m ; S", env)) == dump(f)


# --- random expressions against direct composition ------------------------------------

def atoms(h4):
    H = h4.space
    return {
        0: [("u", h4.unit, 1)],
        1: [("S", h4.antipode, 1), ("Sinv", h4.antipode_inverse, 1), ("cm", h4.cm, 2),
            ("cu", h4.counit, 0), ("id[H]", identity(H), 1)],
        2: [("m", h4.m, 1), ("ad", adjoint_action(h4), 1), ("swap[H,H]", swap(H, H), 2)],
    }


def random_factor(rng, k, table, depth):
    """A factor with k inputs: (text, map, outputs)."""
    if depth > 0 and rng.random() < 0.25:
        text, f, n = random_expr(rng, k, table, depth - 1)
        return f"({text})", f, n
    return rng.choice(table[k])


def random_term(rng, n, table, depth):
    """Factors side by side whose inputs add up to n."""
    sizes = []
    left = n
    while left:
        k = rng.choice([1, 2] if left > 1 else [1])
        sizes.append(k)
        left -= k
    if not sizes or rng.random() < 0.2:
        sizes.insert(rng.randint(0, len(sizes)), 0)
    parts = [random_factor(rng, k, table, depth) for k in sizes]
    text = " * ".join(p[0] for p in parts)
    f = parts[0][1]
    for p in parts[1:]:
        f = tensor(f, p[1])
    return text, f, sum(p[2] for p in parts)


def random_expr(rng, n, table, depth=2):
    text, f, out = random_term(rng, n, table, depth)
    for _ in range(rng.randint(0, 3)):
        if out > 3:
            break
        t2, g, out2 = random_term(rng, out, table, depth)
        if out2 > 3:
            break
        text, f, out = f"{text} ; {t2}", compose(f, g), out2
    return text, f, out


def test_random_expressions_match_direct_composition(env, h4):
    rng = random.Random(2024)
    table = atoms(h4)
    done = 0
    while done < 100:
        text, expected, _ = random_expr(rng, rng.randint(0, 3), table)
        got = evaluate(text, env)
        assert got == expected, text
        ast = parse(text)
        assert parse(to_text(ast)) == ast
        assert evaluate(to_text(ast), env) == expected
        done += 1
