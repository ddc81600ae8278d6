"""Named quantities that sweeps can evaluate, built from flat parameter dicts."""
from . import planar, sphereplane, thermo
from .errors import ConfigError
from .materials import DcDielectric, Drude, PerfectConductor, TemperatureLaw


def _model(kind, p):
    if kind == "drude":
        return Drude(p["omega_p"], p.get("gamma", 0.0))
    if kind == "dc":
        return DcDielectric(p["eps0"], p.get("sigma", 0.0))
    return PerfectConductor()


def _geometry(kind, p):
    if kind == "planar":
        return planar.PlanarGeometry(p["a"])
    R = p.get("R", 1.0)
    if "eps" in p:
        return sphereplane.SpherePlaneGeometry.from_eps(p["eps"], R)
    return sphereplane.SpherePlaneGeometry(R, p["L"])


def _law(p):
    if "mu1" in p or "alpha" in p:
        return TemperatureLaw(p["mu1"], p["alpha"])
    return None


def _thermo_config(model_kind, geometry_kind, p):
    return thermo.ThermoConfig(_geometry(geometry_kind, p), _model(model_kind, p), _law(p),
                               l_m=p["l_m"], l_m_g=p["l_m_g"])


def _entropy(mk, gk, p):
    cfg = _thermo_config(mk, gk, p)
    b = thermo.entropy_breakdown(cfg, p["T"], tol=p["tol"])
    diverges = cfg.law is not None and cfg.law.alpha <= 1.0
    return {"s0": b.s0, "s1": b.s1, "total": b.total, "diverges": diverges}


def _residual(mk, gk, p):
    r = thermo.residual_entropy(_thermo_config(mk, gk, p), strict=False, tol=p["tol"])
    return {"value": r.value, "diverges": r.diverges}


def _numerical_entropy(mk, gk, p):
    cfg = _thermo_config(mk, gk, p)
    return {"value": thermo.numerical_entropy(cfg, p["T"], tol=p["tol"])}


def _planar_model_at_T(mk, gk, p):
    cfg_law = _law(p)
    model = _model(mk, p)
    if cfg_law is not None:
        model = model.with_relaxation(float(cfg_law(p["T"])))
    return model, _geometry(gk, p)


def _free_energy(mk, gk, p):
    model, geom = _planar_model_at_T(mk, gk, p)
    return {"value": planar.free_energy(model, geom, p["T"], tol=p["tol"])}


def _delta_f(mk, gk, p):
    model, geom = _planar_model_at_T(mk, gk, p)
    return {"value": planar.delta_f(model, geom, p["T"], tol=p["tol"])}


def _vacuum_energy(mk, gk, p):
    return {"value": planar.vacuum_energy(_model(mk, p), _geometry(gk, p), tol=p["tol"])}


def _vacuum_coeffs(mk, gk, p):
    geom = _geometry(gk, p)
    if mk == "drude":
        et, e1 = planar.drude_vacuum_coeffs(p["omega_p"], geom.a, tol=p["tol"])
    else:
        et, e1 = planar.dc_vacuum_coeffs(p["eps0"], geom.a, tol=p["tol"])
    return {"E_tilde1": et, "E1": e1}


def _f_linear(mk, gk, p):
    geom = _geometry(gk, p)
    mu1 = p.get("mu1", 0.0)
    if mk == "drude":
        return {"value": planar.linear_coeff_drude(mu1, geom, p["omega_p"], tol=p["tol"])}
    return {"value": planar.linear_coeff_dc(mu1, p["eps0"], tol=p["tol"])}


def _t2(mk, gk, p):
    te, tm = planar.fixed_param_t2(_model(mk, p), _geometry(gk, p))
    return {"t2_te": te, "t2_tm": tm}


def _f_ball(mk, gk, p):
    f = sphereplane.linear_coeff_ball(_model(mk, p), _geometry(gk, p), p["l_m"],
                                      mu1=p.get("mu1", 0.0), tol=p["tol"])
    return {"value": f}


def _g(mk, gk, p):
    geom = _geometry(gk, p)
    te = sphereplane.fixed_param_g("TE", geom, p["l_m_g"])
    tm = sphereplane.fixed_param_g("TM", geom, p["l_m_g"], divergence_study=True)
    return {"g_te": te, "g_tm": tm}


#: name -> (function, output columns, required keys, allowed model kinds, geometry kinds)
TARGETS = {
    "entropy": (_entropy, ("s0", "s1", "total", "diverges"), ("T",), ("drude", "dc"),
                ("planar", "sphereplane")),
    "residual_entropy": (_residual, ("value", "diverges"), (), ("drude", "dc"),
                         ("planar", "sphereplane")),
    "numerical_entropy": (_numerical_entropy, ("value",), ("T",), ("drude", "dc"), ("planar",)),
    "free_energy": (_free_energy, ("value",), ("T",), ("drude", "dc", "perfect"), ("planar",)),
    "delta_f": (_delta_f, ("value",), ("T",), ("drude", "dc", "perfect"), ("planar",)),
    "vacuum_energy": (_vacuum_energy, ("value",), (), ("drude", "dc", "perfect"), ("planar",)),
    "vacuum_coeffs": (_vacuum_coeffs, ("E_tilde1", "E1"), (), ("drude", "dc"), ("planar",)),
    "f_linear": (_f_linear, ("value",), (), ("drude", "dc"), ("planar",)),
    "t2": (_t2, ("t2_te", "t2_tm"), (), ("drude", "dc"), ("planar",)),
    "f_ball": (_f_ball, ("value",), (), ("drude", "dc"), ("sphereplane",)),
    "g": (_g, ("g_te", "g_tm"), (), ("drude", "dc", "perfect"), ("sphereplane",)),
}


def check_params(target, model_kind, geometry_kind, keys):
    """Raise :class:`ConfigError` naming the first missing or misplaced key."""
    _, _, needed, models, geometries = TARGETS[target]
    if model_kind not in models:
        raise ConfigError(f"target {target!r} does not support model kind {model_kind!r}")
    if geometry_kind not in geometries:
        raise ConfigError(f"target {target!r} does not support geometry kind {geometry_kind!r}")
    required = list(needed)
    required += {"drude": ["omega_p"], "dc": ["eps0"], "perfect": []}[model_kind]
    if geometry_kind == "planar":
        required.append("a")
    elif "eps" not in keys:
        required.append("L")
    if ("mu1" in keys) != ("alpha" in keys) and target not in ("f_linear", "f_ball"):
        required.append("alpha" if "mu1" in keys else "mu1")
    for key in required:
        if key not in keys:
            raise ConfigError(f"missing key {key!r} (needed by target {target!r})")


def evaluate(target, model_kind, geometry_kind, params):
    """Compute one row: dict of the target's output columns."""
    fn, columns, *_ = TARGETS[target]
    out = fn(model_kind, geometry_kind, params)
    return {c: out[c] for c in columns}


def columns(target):
    return TARGETS[target][1]

