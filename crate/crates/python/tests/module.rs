use pyo3::prelude::*;
use pyo3::types::PyDict;
use pyo3::wrap_pymodule;

fn run(code: &std::ffi::CStr) {
    Python::initialize();
    Python::attach(|py| {
        let globals = PyDict::new(py);
        globals.set_item("lv", wrap_pymodule!(pylevelstir::pylevelstir)(py)).unwrap();
        py.run(c"from fractions import Fraction as F", Some(&globals), None).unwrap();
        if let Err(e) = py.run(code, Some(&globals), None) {
            e.display(py);
            panic!("python assertion failed");
        }
    });
}

#[test]
fn values_cross_as_fractions() {
    run(c"
assert lv.stirling_number(2, 2, 5, 4) == 30
assert lv.bernoulli2(12) == F(29167388522, 1365)
assert lv.pb2(10, 1, route='multinomial') == F(6936718, 33)
assert lv.pb2(6, -1, route='gf') == lv.pb2(6, -1)
assert lv.pc2(4, 1) == F(-17, 15)
assert lv.bernoulli(12) == F(-691, 2730)
assert lv.frac_part(F(-1, 3)) == F(2, 3)
");
}

#[test]
fn errors_map_to_python_exceptions() {
    run(c"
for bad in (lambda: lv.pb2(3, 1), lambda: lv.stirling_number(3, 1, 2, 1), lambda: lv.vsc(0)):
    try:
        bad()
    except ValueError:
        pass
    else:
        raise AssertionError('expected ValueError')
try:
    lv.PSeries([0, 1]) / lv.PSeries([0, 0, 1])
except ZeroDivisionError:
    pass
else:
    raise AssertionError('expected ZeroDivisionError')
");
}

#[test]
fn classes() {
    run(c"
t = lv.StirlingTable(1, 2)
assert t.row(3) == [0, 4, 5, 1] and t[3, 2] == 5 and t.level == 2
r = lv.vsc(9)
assert r.reduced_defect == 1 and [p for p, _ in r.terms] == [3, 7, 19]
c7 = lv.congruence_table(7)
assert c7.entries[1] == [2, 6, 4, 5, 1, 3] and c7.get(7, 13) == 6
z = lv.PSeries.two_sin_half(9)
q = lv.PSeries.li2k(1, 9).compose(z) / z
assert q.coeff(2) * 2 == lv.bernoulli2(2)
assert all(passed or diag for _, passed, diag, _ in lv.run_verify(3, 2, 8))
");
}
