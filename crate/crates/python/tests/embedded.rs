//! Imports the module into an embedded interpreter and drives it from Python.

use pyo3::prelude::*;
use pyo3::types::PyDict;

use oscfractal_py::oscfractal_py;

#[test]
fn module_from_python() {
    pyo3::append_to_inittab!(oscfractal_py);
    Python::initialize();
    Python::attach(|py| {
        let locals = PyDict::new(py);
        py.run(
            cr#"
import math
import oscfractal_py as of

f = of.Phase(1, [([3], 1.0), ([0], 1.0)])
p = of.predict(f)
assert p["curve_dim"] == "3/2", p
assert p["regime"] == "oscillatory"

nd = of.newton(of.Phase(2, [([2, 0], 1.0), ([0, 6], 1.0), ([0, 0], 1.0)]))
assert nd["beta"] == "-2/3", nd

pts = of.gen_astring(2.0)
d = of.box_dimension(pts, connected=False, eps_max=1e-2, eps_min=1e-4)
assert abs(d["d_hat"] - 1 / 3) < 0.03, d

try:
    of.Phase(1, [([2], float("nan"))])
except ValueError:
    rejected = True
else:
    rejected = False
result = abs(of.gamma(0.5) - math.sqrt(math.pi)) < 1e-12 and rejected
"#,
            None,
            Some(&locals),
        )
        .unwrap();
        let ok: bool = locals
            .get_item("result")
            .unwrap()
            .unwrap()
            .extract()
            .unwrap();
        assert!(ok);
    });
}
