"""Smoke test for the pylevelstir extension module.

Build and install first, e.g. `maturin develop -m crates/python/Cargo.toml`
or `pip install ./crates/python`.
"""

import math
from fractions import Fraction

import pylevelstir as lv


def main():
    assert lv.stirling_number(2, 2, 5, 4) == 30
    assert lv.StirlingTable(2, 3).row(3) == [0, 1, 9, 1]

    values = [lv.bernoulli2(2 * n) for n in range(6)]
    assert values == [Fraction(1), Fraction(2, 3), Fraction(62, 15), Fraction(1670, 21),
                      Fraction(47102, 15), Fraction(6936718, 33)]
    for route in ("multinomial", "gf", "iterated"):
        assert lv.pb2(8, 2, route=route) == lv.pb2(8, 2)
    assert lv.pb2(2, -2) == 18
    assert lv.pc2(4, 1) == Fraction(-17, 15)

    report = lv.vsc(9)
    assert report.reduced_defect == 1
    assert lv.frac_part(lv.bernoulli2(12)) == Fraction(272, 1365)

    assert lv.congruence_table(5).entries == [[3, 4, 2, 1], [2, 1, 3, 4]]
    assert all(lv.residue(n, k, 6) == 0 for n in range(1, 6) for k in range(1, 6))

    z = lv.PSeries.two_sin_half(11)
    quotient = lv.PSeries.li2k(1, 11).compose(z) / z
    assert [quotient.coeff(2 * n) for n in range(6)] == [
        v / math.factorial(2 * n) for n, v in enumerate(values)
    ]

    assert lv.doublesum_check(4, 4)
    groups = lv.run_verify(4, 2, 10)
    for name, passed, diagnostic, details in groups:
        print(f"[{'PASS' if passed else ('NOTE' if diagnostic else 'FAIL')}] {name}")
        assert passed or diagnostic, details
    print("smoke test passed")


if __name__ == "__main__":
    main()
