from importlib import resources

import pytest

from twoalg import XModMorphism, identity_homotopy, parse, roundtrip_xmod
from twoalg.cli import main
from twoalg.corpus import bundled_files
from twoalg.serialize import dump

FILES = bundled_files()
XMOD_FILES = sorted(n for n in FILES if n.endswith(".xmod") and n != "precrossed_specimen.xmod")


def corpus(name):
    return str(resources.files("twoalg") / "corpus" / name)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


class TestCheck:
    def test_ideal_inclusion(self, capsys):
        code, out, _ = run(capsys, "check", corpus("example1.xmod"))
        assert code == 0
        assert "[pass] CM1" in out and "[pass] CM2" in out

    def test_precrossed_specimen(self, capsys):
        code, out, _ = run(capsys, "check", corpus("precrossed_specimen.xmod"))
        assert code == 1
        assert "[FAIL] CM2 witness=(0, 0)" in out

    @pytest.mark.parametrize("name", sorted(FILES))
    def test_every_corpus_file(self, capsys, name):
        code, out, _ = run(capsys, "check", corpus(name))
        expected = 1 if name == "precrossed_specimen.xmod" else 0
        assert code == expected, out

    def test_exhaustive(self, capsys):
        code, out, _ = run(capsys, "check", "--exhaustive", corpus("semidirect_example1.2alg"))
        assert code == 0 and "ICHG_EXHAUSTIVE" in out

    def test_deterministic(self, capsys):
        first = run(capsys, "check", corpus("precrossed_specimen.xmod"))
        second = run(capsys, "check", corpus("precrossed_specimen.xmod"))
        assert first == second

    def test_parse_error(self, capsys, tmp_path):
        bad = tmp_path / "bad.alg"
        bad.write_text('{"kind": "algebra", "modulus": 2, "rank": 1, "mul": [[0, 0, 0, 2]], "unit": null}')
        code, _, err = run(capsys, "check", str(bad))
        assert code == 2 and "$.mul[0][3]" in err

    def test_missing_file(self, capsys, tmp_path):
        code, _, _ = run(capsys, "check", str(tmp_path / "nope.xmod"))
        assert code == 2

    def test_usage_error(self, capsys):
        with pytest.raises(SystemExit) as info:
            main(["frobnicate"])
        assert info.value.code == 2


class TestRoundtrip:
    def test_ideal_inclusion(self, capsys):
        code, out, _ = run(capsys, "roundtrip", corpus("example1.xmod"))
        assert code == 0
        w = roundtrip_xmod(parse(FILES["example1.xmod"]))
        assert f"forward level 1: {w.forward[0].matrix.tolist()}" in out
        assert f"backward level 0: {w.backward[1].matrix.tolist()}" in out

    def test_two_algebra(self, capsys):
        code, out, _ = run(capsys, "roundtrip", corpus("mult_dual.2alg"))
        assert code == 0 and "2Alg->2Alg" in out

    def test_precrossed_rejected(self, capsys):
        code, _, _ = run(capsys, "roundtrip", corpus("precrossed_specimen.xmod"))
        assert code == 1


class TestConstruct:
    def test_ideal(self, capsys):
        code, out, _ = run(capsys, "construct", "ideal", corpus("dual_numbers.alg"), "0,1")
        assert code == 0 and out == FILES["example1.xmod"]

    def test_zero_boundary(self, capsys, tmp_path):
        from twoalg import FiniteAlgebra
        m_file = tmp_path / "m.alg"
        dump(FiniteAlgebra.zero_mult(2, 1), m_file)
        code, out, _ = run(capsys, "construct", "zero", str(m_file), corpus("z2.alg"))
        assert code == 0 and out == FILES["example2.xmod"]

    def test_multiplication(self, capsys, tmp_path):
        code, out, _ = run(capsys, "construct", "mult", corpus("dual_numbers.alg"))
        assert code == 0 and out == FILES["example3.xmod"]
        target = tmp_path / "m.2alg"
        code, _, _ = run(capsys, "construct", "mult", corpus("dual_numbers.alg"), "--two-algebra",
                         "-o", str(target))
        assert code == 0 and target.read_text() == FILES["mult_dual.2alg"]

    def test_multiplication_precondition(self, capsys, tmp_path):
        from twoalg import FiniteAlgebra
        m_file = tmp_path / "m.alg"
        dump(FiniteAlgebra.zero_mult(2, 1), m_file)
        code, _, err = run(capsys, "construct", "mult", str(m_file))
        assert code == 1 and "precondition" in err


class TestConversions:
    @pytest.mark.parametrize("name", XMOD_FILES)
    def test_to_2alg_then_back(self, capsys, tmp_path, name):
        mid = tmp_path / "mid.2alg"
        code, _, _ = run(capsys, "to-2alg", corpus(name), "-o", str(mid))
        assert code == 0
        code, out, _ = run(capsys, "to-xmod", str(mid))
        assert code == 0 and out == FILES[name]

    def test_semidirect_file(self, capsys):
        code, out, _ = run(capsys, "to-2alg", corpus("example1.xmod"))
        assert code == 0 and out == FILES["semidirect_example1.2alg"]

    def test_precrossed_emits_and_warns(self, capsys):
        code, out, err = run(capsys, "to-2alg", corpus("precrossed_specimen.xmod"))
        assert code == 1
        assert '"kind": "2alg"' in out
        assert "pre-crossed" in err

    def test_to_xmod_rejects_broken_2alg(self, capsys, tmp_path):
        mid = tmp_path / "mid.2alg"
        run(capsys, "to-2alg", corpus("precrossed_specimen.xmod"), "-o", str(mid))
        code, _, err = run(capsys, "to-xmod", str(mid))
        assert code == 1 and "ICHG" in err

    def test_morphisms(self, capsys):
        code, out, _ = run(capsys, "to-2alg", corpus("identity_example1.xmor"))
        assert code == 0 and out == FILES["semidirect_identity_example1.2mor"]
        code, out, _ = run(capsys, "to-xmod", corpus("semidirect_identity_example1.2mor"))
        assert code == 0 and out == FILES["identity_example1.xmor"]

    def test_wrong_kind(self, capsys):
        code, _, _ = run(capsys, "to-2alg", corpus("z2.alg"))
        assert code == 2


class TestHomotopy:
    def test_check(self, capsys):
        for name in ("shift_example1.der", "semidirect_shift_example1.htpy"):
            code, out, _ = run(capsys, "homotopy", "check", corpus(name))
            assert code == 0, out

    def test_transport_round_trip(self, capsys, tmp_path):
        code, out, _ = run(capsys, "homotopy", "to-2alg", corpus("shift_example1.der"))
        assert code == 0 and out == FILES["semidirect_shift_example1.htpy"]
        code, out, _ = run(capsys, "homotopy", "to-xmod", corpus("semidirect_shift_example1.htpy"))
        assert code == 0 and out == FILES["shift_example1.der"]

    def test_compose_needs_chaining(self, capsys):
        der = corpus("shift_example1.der")
        code, _, err = run(capsys, "homotopy", "compose", der, der)
        assert code == 1 and "chain" in err

    def test_compose_with_identity(self, capsys, tmp_path):
        H = parse(FILES["semidirect_shift_example1.htpy"])
        unit = tmp_path / "unit.htpy"
        dump(identity_homotopy(H.G), unit)
        code, out, _ = run(capsys, "homotopy", "compose", corpus("semidirect_shift_example1.htpy"), str(unit))
        assert code == 0 and out == FILES["semidirect_shift_example1.htpy"]

    def test_compose_derivations(self, capsys, tmp_path):
        from twoalg import Derivation, homotopy_target
        d = parse(FILES["shift_example1.der"])
        g = homotopy_target(d.base, d).g
        back = tmp_path / "back.der"
        dump(Derivation(g, -d.map), back)
        code, out, _ = run(capsys, "homotopy", "compose", corpus("shift_example1.der"), str(back))
        assert code == 0
        total = parse(out)
        assert total.map.is_zero() and total.base == XModMorphism.identity(d.base.source)


class TestEnumerate:
    def test_actions(self, capsys):
        code, out, _ = run(capsys, "enumerate", "actions", "--rank-r", "1", "--rank-c", "1")
        assert code == 0 and out.strip().endswith("count: 2")  # one action on each rank-1 algebra

    def test_actions_from_files(self, capsys):
        code, out, _ = run(capsys, "enumerate", "actions", corpus("z2.alg"), corpus("z2.alg"))
        assert code == 0 and out.strip().endswith("count: 1")

    def test_cap_refusal(self, capsys):
        code, _, err = run(capsys, "enumerate", "actions", "--rank-c", "2", "--cap", "10")
        assert code == 2 and "cap" in err

    def test_derivations(self, capsys):
        code, out, _ = run(capsys, "enumerate", "derivations", corpus("identity_example1.xmor"))
        assert code == 0
        assert out.splitlines() == ["[[0, 0]]", "[[0, 1]]", "count: 2"]

    def test_crossed_modules_census(self, capsys):
        code, out, _ = run(capsys, "enumerate", "crossed-modules", corpus("z2.alg"), corpus("z2.alg"))
        assert code == 0 and "pre-crossed (failing only CM2): 1" in out

    def test_linear_maps(self, capsys):
        code, out, _ = run(capsys, "enumerate", "linear-maps", "--modulus", "3")
        assert code == 0 and out.strip().endswith("count: 3")


def test_selftest_subset(capsys):
    code, out, _ = run(capsys, "selftest", "1")
    assert code == 0 and out.startswith("[PASS] criterion 1")
