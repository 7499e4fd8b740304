"""Smoke test for the zigzag_lab extension module.

Build first:  pip install --no-build-isolation -e crates/py
Run:          python3 python/smoke_test.py
"""

import json
import math
import sys

import zigzag_lab as z

try:
    import jsonschema
except ImportError:  # schema validation is optional here
    jsonschema = None


def alternating_count(n):
    # independent Seidel triangle, kept tiny on purpose
    row = [1]
    out = [1]
    for i in range(1, n + 1):
        nxt = [0]
        for x in reversed(row):
            nxt.append(nxt[-1] + x)
        row = nxt
        out.append(row[-1])
    return out


def main():
    table = z.ZigzagTable(30)
    egf = z.ZigzagTable(30, "egf_series")
    assert table.values() == egf.values() == alternating_count(30)
    assert table[10] == 50521 and len(table) == 31

    tri = z.StirlingTriangle(6)
    assert tri.row(4) == [0, 1, 7, 6, 1]

    assert z.euler_secant(3) == table[6]
    assert z.bernoulli_tangent(3) == table[7]

    assert abs(z.hyper_calibrated(1, "odd") - 2.0) < 1e-9
    assert abs(z.mellin_moment(3, "cosh") - z.mellin_moment(3, "cosh", 1e-10)) < 1e-8

    contour = z.contour_trapezoid(5)
    # the printed contour form carries a sign flip; the magnitude matches
    assert abs(abs(contour["coefficient_scaled"]) - table[5]) < 1e-6

    assert z.period_finder(3, 200)["period"] == 4
    assert z.wilson_step_check(5)["claim"]["p"] == 5

    with_err = False
    try:
        z.ZigzagTable(5, "abacus")
    except ValueError:
        with_err = True
    assert with_err

    schema = json.loads(z.report_schema())
    envelopes = [
        json.loads(z.verify_json(8)),
        json.loads(z.compute_json(12)),
        json.loads(z.quadrature_json("hyper_calibrated", 3, "odd")),
    ]
    for env in envelopes:
        if jsonschema is not None:
            jsonschema.validate(env, schema)
        assert env["tool_version"] == z.__version__
    assert z.verify_json(8) == z.verify_json(8)

    asym = z.asymptotic_error_table(20)
    assert all(math.isfinite(r["rel_error"]) for r in asym)

    print("zigzag_lab smoke test ok (schema validation: %s)" % ("on" if jsonschema else "off"))
    return 0


if __name__ == "__main__":
    sys.exit(main())
