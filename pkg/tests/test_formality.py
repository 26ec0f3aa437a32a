import pytest

from bcformal.algebra import Form, Model
from bcformal.catalog import builtin
from bcformal.cohomology import compute
from bcformal.errors import BudgetExceeded, NotACocycle, NotAMorphism, ProductNotExact
from bcformal.formality import (
    BicomplexMorphism,
    MasseyInput,
    is_geometrically_formal,
    massey_abc,
    massey_naturality,
    obstruction_report,
    solve_ddbar,
)
from bcformal.gaussian import GR, I
from bcformal.hodge import laplacian

F = Form.monomial
phi = Form.generator
phib = Form.conj_generator

IWASAWA_TRIPLE = (F((1, 2)), F((), (1, 2)), phib(1))


def _proportional(f, g):
    """Is ``f`` a non-zero scalar multiple of ``g``?"""
    if not f or not g or set(f.monomials()) != set(g.monomials()):
        return False
    m0 = g.monomials()[0]
    ratio = f.coefficient(m0) / g.coefficient(m0)
    return f == g.scale(ratio)


def test_s3xs3_bott_chern_formal():
    v = is_geometrically_formal(builtin("s3xs3_calabi_eckmann").model, "bc")
    assert v.formal and v.witness is None
    assert v.recheck(builtin("s3xs3_calabi_eckmann").model)


def test_s3xs3_dolbeault_witness():
    m = builtin("s3xs3_calabi_eckmann").model
    v = is_geometrically_formal(m, "dolbeault")
    assert not v.formal
    target = F((1,), (1,), I) + F((2,), (2,))
    assert _proportional(v.witness[0], target)
    assert v.witness[0] == v.witness[1]
    assert v.recheck(m)


@pytest.mark.parametrize("case", ["a", "b"])
def test_nakamura_verdicts(case):
    m = builtin(f"nakamura_{case}").model
    bc = is_geometrically_formal(m, "bottChern")
    assert not bc.formal and bc.recheck(m)
    assert is_geometrically_formal(m, "dolbeault").formal


def test_nakamura_b_printed_pair():
    m = builtin("nakamura_b").model
    a, b = F((1, 2)), F((), (1, 2))
    assert not laplacian(m, a, "bc") and not laplacian(m, b, "bc")
    assert laplacian(m, a ^ b, "bc")


def test_torus_formal_both():
    m = builtin("torus_3").model
    assert is_geometrically_formal(m, "bc").formal
    assert is_geometrically_formal(m, "dolbeault").formal


def test_formality_rejects_other_theories():
    with pytest.raises(ValueError):
        is_geometrically_formal(builtin("torus_1").model, "aeppli")


def test_iwasawa_massey_product():
    m = builtin("iwasawa").model
    r = massey_abc(m, IWASAWA_TRIPLE)
    assert r.a13 == -F((3,), (3,))
    assert r.a24 == Form.zero()
    # the displayed sign conventions give minus the printed form
    assert r.representative == -F((3,), (1, 3))
    assert not r.vanishes
    assert r.target_bidegree == (1, 2)
    assert r.target.dimension - r.indeterminacy.dim == 4
    assert not m.del_(m.delbar(r.representative))


def test_supplied_potentials_are_checked():
    m = builtin("iwasawa").model
    r = massey_abc(m, IWASAWA_TRIPLE, potentials=(-F((3,), (3,)) + F((1,), (3,)), None))
    assert r.quotient_equal(massey_abc(m, IWASAWA_TRIPLE).representative)
    with pytest.raises(ValueError):
        massey_abc(m, IWASAWA_TRIPLE, potentials=(F((3,), (3,)), None))


def test_exact_first_entry_vanishes():
    m = builtin("iwasawa").model
    xi = F((3,), (3,))
    exact = m.del_(m.delbar(xi))  # = -phi12 12~, a ddbar-exact (2,2)-form
    r = massey_abc(m, (exact, phib(1), phib(1)))
    assert r.vanishes


def test_undefined_products():
    m = builtin("iwasawa").model
    with pytest.raises(ProductNotExact):
        massey_abc(m, (phi(1), phib(1), phi(2)))
    with pytest.raises(NotACocycle):
        massey_abc(m, (phi(3), phi(1), phi(2)))
    with pytest.raises(NotACocycle):
        massey_abc(m, (Form.zero(), phi(1), phi(2)))


def test_torus_products_vanish():
    rep = obstruction_report(builtin("torus_2").model)
    assert not rep.obstructed
    assert rep.verdict.formal


def test_obstructions_iwasawa():
    rep = obstruction_report(builtin("iwasawa").model, stop_at_first=True)
    assert rep.obstructed
    assert not rep.verdict.formal


def test_obstructions_s3xs3():
    rep = obstruction_report(builtin("s3xs3_calabi_eckmann").model, coefficient_bound=1)
    assert not rep.obstructed
    assert rep.verdict.formal
    assert rep.triples_defined > 0


def test_obstruction_budget():
    with pytest.raises(BudgetExceeded):
        obstruction_report(builtin("iwasawa").model, budget=3)


def test_solve_ddbar_none_when_not_exact():
    m = builtin("iwasawa").model
    assert solve_ddbar(m, F((1,), (1,))) is None
    x = solve_ddbar(m, F((1, 2), (1, 2)))
    assert m.del_(m.delbar(x)) == F((1, 2), (1, 2))


# -- morphisms -----------------------------------------------------------------------

def test_identity_naturality():
    m = builtin("iwasawa").model
    check = massey_naturality(BicomplexMorphism.identity(m), IWASAWA_TRIPLE)
    assert check.holds
    assert check.upstream.representative == check.downstream.representative


def test_zero_target_naturality():
    m = builtin("iwasawa").model
    point = builtin("torus_1").model
    f = BicomplexMorphism(m, point, (Form.zero(), Form.zero(), Form.zero())).validate()
    check = massey_naturality(f, IWASAWA_TRIPLE)
    assert check.holds and check.downstream.vanishes


def test_iwasawa_swap_automorphism():
    m = builtin("iwasawa").model
    f = BicomplexMorphism(m, m, (phi(2), phi(1), -phi(3))).validate()
    check = massey_naturality(f, IWASAWA_TRIPLE)
    assert check.holds
    assert not check.downstream.vanishes


def test_iwasawa_complex_scaling():
    m = builtin("iwasawa").model
    f = BicomplexMorphism(m, m, (phi(1).scale(I), phi(2).scale(2), phi(3).scale(GR(0, 2)))).validate()
    assert massey_naturality(f, IWASAWA_TRIPLE).holds


def test_inclusion_of_closed_generators():
    # sub-bicomplex generated by phi1, phi2 and their conjugates inside Iwasawa
    src = builtin("torus_2").model
    dst = builtin("iwasawa").model
    f = BicomplexMorphism(src, dst, (phi(1), phi(2))).validate()
    gens = [phi(1), phi(2), phib(1), phib(2), F((1, 2)), F((), (1, 2))]
    checked = 0
    for a in gens:
        for b in gens:
            for c in gens:
                try:
                    check = massey_naturality(f, (a, b, c))
                except ProductNotExact:
                    continue
                assert check.holds
                checked += 1
    assert checked > 0


def test_not_a_morphism():
    m = builtin("iwasawa").model
    t = builtin("torus_2").model
    with pytest.raises(NotAMorphism):
        BicomplexMorphism(m, t, (phi(1), phi(2), Form.zero())).validate()
    with pytest.raises(NotAMorphism):
        BicomplexMorphism(m, m, (phi(1), phi(2))).validate()
    with pytest.raises(NotAMorphism):
        BicomplexMorphism(m, m, (phib(1), phi(2), phi(3))).validate()
