import numpy as np
import pytest

from maxpair.presentations import (
    InconsistentPresentationError,
    PresentationError,
    Word,
    build_group,
    normal_form,
    parse_presentation,
    render_presentation,
)

C3_TEXT = "group T\ngens 1\norder g1 3\nend"

HEIS_TEXT = """
# Heisenberg group, order 27
group heis
gens 3
order g1 3
order g2 3
order g3 3
conj 2 1 : g2 g3
end
"""


def test_single_cyclic_generator():
    pres = parse_presentation(C3_TEXT)
    assert pres.name == "T"
    assert pres.n == 1
    assert pres.rel_orders == (3,)
    assert pres.power_rels[0] == Word(())
    G = build_group(pres)
    assert G.n == 3


def test_round_trip_render_parse():
    pres = parse_presentation(HEIS_TEXT)
    text = render_presentation(pres)
    again = parse_presentation(text)
    assert again == pres
    assert render_presentation(again) == text


def test_comments_and_blank_lines_ignored():
    noisy = "\n\n# hello\n" + C3_TEXT.replace("\n", "\n# mid\n")
    assert parse_presentation(noisy) == parse_presentation(C3_TEXT)


@pytest.mark.parametrize("text,fragment", [
    ("group X\ngens 1\norder g1 4\nend", "prime"),
    ("group X\ngens 1\norder g1 3", "end"),
    ("group X\ngens 2\norder g1 3\norder g2 3\npow 1 : g1\nend", "support"),
    ("group X\ngens 2\norder g1 3\norder g2 3\nconj 2 1 : g1 g2\nend", "support"),
    ("group X\ngens 1\norder g1 3\nbogus line\nend", "bogus"),
    ("group X\ngens 2\norder g1 3\nend", "order"),
])
def test_parse_errors(text, fragment):
    with pytest.raises(PresentationError) as err:
        parse_presentation(text)
    assert fragment in str(err.value).lower()


def test_inconsistent_presentation_rejected():
    # g2^g1 = g2^2 defines an order-2 automorphism, but g1 has order 3.
    text = ("group bad\ngens 2\norder g1 3\norder g2 3\n"
            "conj 2 1 : g2^2\nend")
    with pytest.raises(InconsistentPresentationError):
        build_group(parse_presentation(text))


def test_normal_form_reduces_exponents():
    pres = parse_presentation(HEIS_TEXT)
    # g1^4 == g1, and negative exponents wrap
    assert normal_form(pres, [(1, 4)]) == Word(((1, 1),))
    assert normal_form(pres, [(1, -1)]) == Word(((1, 2),))


def test_heisenberg_collection():
    G = build_group(parse_presentation(HEIS_TEXT))
    assert G.n == 27
    # commutator [g2, g1] = g3: indices follow mixed radix, g1 most significant
    g1, g2, g3 = G.gens
    lhs = G.mul[G.mul[G.inv[g2], G.inv[g1]], G.mul[g2, g1]]
    assert int(lhs) == g3
    # every element has order 1 or 3 (exponent p)
    assert set(np.unique(G.element_orders())) == {1, 3}


def test_q8_element_order_histogram():
    text = ("group q8\ngens 3\norder g1 2\norder g2 2\norder g3 2\n"
            "pow 1 : g3\npow 2 : g3\nconj 2 1 : g2 g3\nend")
    G = build_group(parse_presentation(text))
    hist = np.bincount(G.element_orders()).tolist()
    assert hist == [0, 1, 1, 0, 6]


def test_table_is_a_group():
    G = build_group(parse_presentation(HEIS_TEXT))
    n = G.n
    # identity, inverses, associativity on a sample
    assert (G.mul[0] == np.arange(n)).all()
    assert (G.mul[:, 0] == np.arange(n)).all()
    assert (G.mul[np.arange(n), G.inv] == 0).all()
    rng = np.random.default_rng(7)
    for _ in range(200):
        a, b, c = rng.integers(0, n, size=3)
        assert G.mul[G.mul[a, b], c] == G.mul[a, G.mul[b, c]]
