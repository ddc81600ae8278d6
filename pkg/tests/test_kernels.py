"""The numba kernels and their pure-numpy fallbacks agree to rounding."""
import json
import os
import subprocess
import sys

import numpy as np
import pytest

from casimir_entropy import _kernels
from casimir_entropy._accel import use_numba

PROBE = r"""
import json, numpy as np
from casimir_entropy import _kernels, planar, sphereplane
from casimir_entropy._accel import use_numba
from casimir_entropy.materials import Drude, DcDielectric
q = np.array([1e-6, 0.1, 1.0, 5.0]) + 1j * np.array([0.0, 0.3, -2.0, 0.5])
chi = np.array([1.0, 0.5 + 0.1j, 2.0, 1e-8])
inv = np.array([0.2, 0.3 - 0.1j, 1.0, 0.5])
z = np.array([1e-3, 0.5 + 0.5j, 6.0j, 12.0 - 3.0j])
out = {"numba": use_numba()}
for mode in (0, 1):
    v = _kernels.planar_log(q, chi, inv, 0.7, mode)
    out[f"log{mode}"] = [v.real.tolist(), v.imag.tolist()]
for l in (1, 4, 9):
    res = _kernels.bessel_arrays(l, z)
    out[f"bessel{l}"] = [[r.real.tolist(), r.imag.tolist()] for r in res[:4]]
g = planar.PlanarGeometry(1.0)
out["delta_f"] = planar.delta_f(Drude(1.0, 0.1), g, 0.05)
out["f_ball"] = sphereplane.linear_coeff_ball(DcDielectric(5.0), sphereplane.SpherePlaneGeometry.from_eps(0.5))
print(json.dumps(out))
"""


def _probe(disable):
    env = dict(os.environ, CASIMIR_DISABLE_NUMBA="1" if disable else "0")
    res = subprocess.run([sys.executable, "-c", PROBE], capture_output=True, text=True, env=env, check=True)
    return json.loads(res.stdout.splitlines()[-1])


def test_disable_flag_selects_numpy():
    assert _probe(True)["numba"] is False


@pytest.mark.skipif(not use_numba(), reason="numba not installed or disabled")
def test_numba_and_numpy_agree():
    fast, slow = _probe(False), _probe(True)
    assert fast["numba"] is True
    for key in fast:
        if key == "numba":
            continue
        a, b = np.array(fast[key], dtype=float), np.array(slow[key], dtype=float)
        if a.ndim:
            # [..., real/imag, points] -> complex, compared by modulus
            a, b = a[..., 0, :] + 1j * a[..., 1, :], b[..., 0, :] + 1j * b[..., 1, :]
        assert np.all(np.abs(a - b) <= 1e-12 * np.abs(b)), key


def test_clog1p_small_argument_accuracy():
    u = np.array([1e-20 + 1e-20j, -1e-12, 0.3 - 0.2j])
    ref = np.array([1e-20 + 1e-20j, np.log1p(-1e-12), np.log(1.3 - 0.2j)])
    np.testing.assert_allclose(_kernels.clog1p(u), ref, rtol=1e-14)
