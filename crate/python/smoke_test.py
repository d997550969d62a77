"""Smoke test for the causal_teams extension module."""

from fractions import Fraction
from pathlib import Path

import causal_teams as ct

FIXTURES = Path(__file__).resolve().parent.parent / "crates" / "core" / "tests" / "fixtures"


def main() -> None:
    pearl = ct.Team.load(str(FIXTURES / "pearl.json"))
    assert pearl.is_multiteam and len(pearl) == 4
    for x in (0, 1):
        for y in (0, 1):
            assert pearl.probability(f"X={x} & Y={y}") == Fraction(1, 4)
    assert pearl.check("(X=1 & Y=1) => (do X=0 []-> Y=0)")
    assert pearl.check("(X=1 & Y=1) => (do X=0 []-> Pr(Y=0) >= 1)")
    assert pearl.probability("do X=0 []-> Y=0", given="X=1 & Y=1") == 1
    assert pearl.markov("axiom")[0]

    ex1 = ct.Team.load(str(FIXTURES / "ex1.json"))
    after = ex1.intervene({"Y": 2})
    assert after.table(["X", "Y", "Z"]) == "X Y Z\n1 2 3\n2 2 3\n4 2 3\n3 2 3\n"
    assert after == ex1.intervene("Y=2")
    assert ("Y", "Z") in after.edges and ("X", "Y") not in after.edges

    ex3 = ct.Team.load(str(FIXTURES / "ex3.json")).intervene({"X": 1})
    terms = [v for row, _ in ex3.rows() for v in row.values() if isinstance(v, str)]
    assert terms == ["f_Z(1,1,2)"], terms

    chain = ct.Team.load(str(FIXTURES / "chain_8_9.json"))
    assert chain.cause("DC", "X", "Y") is None
    assert chain.cause("TC", "X", "Y") == "TC X->Y fix{} x:0=>y:0 x':1=>y':1"

    holds, _, witness = ct.Team.load(str(FIXTURES / "markov_counterexample.json")).markov("axiom")
    assert not holds and witness == "X=1 pa{} nd{Y=2} 2/3 vs 1"

    passed, report = ct.check_law("REP", trials=20)
    assert passed, report
    assert any(law == "DOWNWARD" for law, _, _ in ct.law_ids())
    assert ct.parse_formula("X=1=>Y=2") == "X=1 => Y=2"

    team = ct.generate_team(7, multiteam=True)
    assert ct.Team.from_json(team.to_json()) == team

    try:
        pearl.check("X=(")
    except ValueError:
        pass
    else:
        raise AssertionError("syntax errors raise ValueError")

    print("smoke test passed")


if __name__ == "__main__":
    main()
