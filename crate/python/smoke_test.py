#!/usr/bin/env python3
"""Smoke test for the Python bindings.

Run `cargo build -p kahler-verify-py` first; this script locates the compiled
extension under target/, imports it, and exercises every exposed wrapper once.
"""

import json
import math
import pathlib
import shutil
import sys
import tempfile


def load_module():
    root = pathlib.Path(__file__).resolve().parents[1]
    for profile in ("debug", "release"):
        so = root / "target" / profile / "libkahler_verify_py.so"
        if so.exists():
            tmp = tempfile.mkdtemp(prefix="kvpy-")
            shutil.copy(so, pathlib.Path(tmp) / "kahler_verify_py.so")
            sys.path.insert(0, tmp)
            import kahler_verify_py

            return kahler_verify_py
    sys.exit("extension not found; run: cargo build -p kahler-verify-py")


kv = load_module()
inspected = 0

# spaces and the chart
ch = kv.Space("ch", 2)
assert ch.kind == "ch" and ch.n == 2 and ch.kappa == -1.0
assert abs(ch.phi([0.0, 0.0, 0.0, 0.0])) < 1e-15
# the chart puts the geodesic sphere of radius r at |z| = tanh r
assert abs(ch.distance([math.tanh(0.3), 0.0, 0.0, 0.0]) - 0.3) < 1e-12

# pointwise normalization checks
for rep in (kv.curvature(ch, count=10), kv.potential(ch, count=25), kv.hessian_radial(count=5)):
    assert rep.passed(), repr(rep)
    inspected += 1

# field algebra feeding the integral identity on a small ball
z1, z2 = kv.Field.z(0), kv.Field.z(1)
f = z1**2 * z2 + kv.Field.constant(0.5) * z2.conj()
v = f.value([1.0, 0.0, 0.0, 0.0])
assert abs(v) < 1e-15, "f vanishes on the z2 = 0 slice"
sphere = kv.Surface.sphere(ch, 0.5)
rep = kv.identity(sphere, f, tag="demo", order_surface=8, order_volume=6)
assert rep.check_id == "identity-demo" and rep.passed(), repr(rep)
inspected += 1

battery = kv.identity_battery(sphere, order_surface=8, order_volume=6)
assert len(battery) == 12 and all(r.passed() for r in battery)
inspected += len(battery)

# flat unit ball: closed-form area and volume, equality in both bounds
flat = kv.Space("flat", 2)
ball = kv.Surface.sphere(flat, 1.0)
assert ball.star_shaped and ball.space.kind == "flat"
assert abs(ball.area(order=12) - 2 * math.pi**2) < 1e-9
assert abs(ball.volume(order=12, order_radial=10) - math.pi**2 / 2) < 1e-9
spec = ball.shape_spectrum([1.0, 0.2, -0.3, 0.5])
assert len(spec) == 3 and all(abs(x - 1.0) < 1e-9 for x in spec)
assert abs(ball.h_b([1.0, 0.0, 0.0, 0.0]) - 2.0) < 1e-9
assert abs(ball.alpha([0.0, 1.0, 0.0, 0.0]) - 1.0) < 1e-9
assert abs(ball.mean_curvature([0.0, 0.0, 1.0, 0.0]) - 3.0) < 1e-9
p = ball.point_on([2.0, 0.0, 0.0, 0.0])
assert abs(p[0] - 1.0) < 1e-12 and max(abs(c) for c in p[1:]) < 1e-12

for rep in (kv.invhb(ball), kv.iso(ball)):
    assert rep.passed() and "equality" in rep.notes, repr(rep)
    inspected += 1
assert kv.equality_case(flat, 0.8, count=6).passed()
inspected += 1

# boundary operators on a genuinely non-round surface
ell = kv.Surface.ellipsoid(flat, [1.0, 1.2])
for rep in (
    kv.div_t(ell, count=20),
    kv.duality(ell, pairs=4, order=10),
    kv.compare(ell, count=20),
):
    assert rep.passed(), repr(rep)
    inspected += 1

mink = kv.minkowski(kv.Surface.perturbed_sphere(ch, 0.6, 0.15), order=10)
assert mink.status == "hypothesis-failed", repr(mink)
inspected += 1

# rigidity chain on a projective tube: two distinct curvatures, forced
# product; the comparison-bound row only applies to negatively curved spheres
cp3 = kv.Space("cp", 3)
rows = kv.rigidity(kv.Surface.tube(cp3, 0.4), count=6)
assert [r.status for r in rows] == ["pass", "pass", "pass", "skipped"]
assert rows[1].anchor == "fundB"
inspected += len(rows)

# closed-form spectra
got = sorted(kv.sphere_spectrum(ch, 0.5))
want = sorted([1 / math.tanh(0.5)] * 2 + [2 / math.tanh(1.0)])
assert all(abs(a - b) < 1e-12 for a, b in zip(got, want))
assert len(kv.tube_spectrum(3, 0.4)) == 5

# extension rows: CR data passes, the conjugate control is rejected
assert kv.extension_holomorphy(z1**2 * z2, order=24).passed()
assert kv.extension_holomorphy(kv.Field.zbar(0), order=24).status == "hypothesis-failed"
assert kv.energy_identity(z1**2 * z2, order=24).passed()
inspected += 3

# full pipeline through JSON, minus file handling
doc = json.loads(
    kv.run_report(space="flat", geometry="sphere 1.0", suite="boundary",
                  order_surface=8, order_volume=6)
)
assert doc["all_passed"] and len(doc["checks"]) == 3
assert doc["config"]["geometry"].startswith("sphere")
assert "timing" not in doc
inspected += len(doc["checks"])

# JSON round trip of a single report
one = json.loads(battery[0].to_json())
assert one["check_id"] == battery[0].check_id and one["status"] == "pass"

# config validation surfaces as ValueError
try:
    kv.run_report(space="cp", geometry="sphere 2.0")
except ValueError as e:
    assert "π/2" in str(e)
else:
    raise AssertionError("out-of-chart radius must be rejected")

print(f"smoke test passed: {inspected} reports inspected")
