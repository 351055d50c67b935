"""Command line front end.

    hyperconical eval   --fn NAME [bindings]        one JSON object
    hyperconical sweep  --fn NAME --grid k=spec ... JSON lines, one per point
    hyperconical verify --suite S | --id ID         JSON lines of residual reports
    hyperconical probe  --id PROBE                  JSON lines of sequence rows

Exit codes: 0 pass, 1 identity failure, 2 domain rejection, 3 numerics
failure.  Options may also come from a TOML file given by --config;
command-line flags win over the file, the file wins over built-in
defaults.  Top-level keys of the file apply to every command, a table
named after the command ([verify], [eval], ...) overrides them.
"""

import argparse
import concurrent.futures as cf
import csv
import itertools
import json
import math
import os
import sys
from dataclasses import dataclass

import numpy as np

from . import corefn, hypgamma, nonrel, quad, registry, toda
from .errors import DomainError, HyperconicalError
from .hypgamma import ScaleParams

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

SCHEMA_VERSION = "1"


class UsageError(DomainError):
    """Bad bindings, unknown ids, malformed grids: rejected before numerics."""


# --------------------------------------------------------------- function table


@dataclass(frozen=True)
class Param:
    name: str
    kind: str  # "real", "complex", "int" or a tuple of allowed strings
    default: object = None
    help: str = ""


SCALES = (Param("a_plus", "real", 1.0), Param("a_minus", "real", 1.0))


def _sp(v):
    return ScaleParams(v["a_plus"], v["a_minus"])


def _mero(m):
    out = {"kind": m.kind}
    if m.kind == "regular":
        out["value"] = m.value
        if m.warning:
            out["warning"] = m.warning
    elif m.kind == "zero":
        out["value"] = 0j
        out["order"] = m.order
    else:
        out["value"] = None
        out["order"] = m.order
        if m.residue is not None:
            out["residue"] = m.residue
    return out


def _nr(v):
    return nonrel.NrParams(v["lam"], v["r"], v["k"])


B, X, Y = Param("b", "real"), Param("x", "complex"), Param("y", "complex")
REP = Param("rep", "int", 1)

FUNCTIONS = {
    "hyp_gamma": (SCALES + (Param("z", "complex"),),
                  lambda v, c: _mero(hypgamma.hyp_gamma(_sp(v), v["z"]))),
    "log_gamma_strip": (SCALES + (Param("z", "complex"),),
                        lambda v, c: hypgamma.log_gamma_strip(_sp(v), v["z"])),
    "g_right": (SCALES + (Param("z", "complex"),), lambda v, c: hypgamma.g_right(_sp(v), v["z"])),
    "g_left": (SCALES + (Param("z", "complex"),), lambda v, c: hypgamma.g_left(_sp(v), v["z"])),
    "e_func": (SCALES + (Param("z", "complex"),), lambda v, c: hypgamma.e_func(_sp(v), v["z"], c)),
    "fourier_F": (SCALES + (Param("mu", "complex"), Param("nu", "complex"), Y,
                            Param("mode", ("closed", "quadrature"), "closed")),
                  lambda v, c: hypgamma.fourier_F(_sp(v), v["mu"], v["nu"], v["y"], v["mode"], c)),
    "kernel_K": (SCALES + (B, X, Param("v", "complex")),
                 lambda v, c: _mero(corefn.kernel_K(_sp(v), v["b"], v["x"], v["v"]))),
    "rcal": (SCALES + (B, X, Y, REP),
             lambda v, c: corefn.rcal(_sp(v), v["b"], v["x"], v["y"], v["rep"], c)),
    "rcal_r": (SCALES + (B, X, Y, REP),
               lambda v, c: corefn.rcal_r(_sp(v), v["b"], v["x"], v["y"], v["rep"], c)),
    "conical_C": (SCALES + (B, X, Y),
                  lambda v, c: corefn.conical_C(_sp(v), v["b"], v["x"], v["y"], c)),
    "bfn_B": (SCALES + (B, X, Y, Param("form", ("bnew", "rep2", "rep3"), "bnew")),
              lambda v, c: corefn.bfn_B(_sp(v), v["b"], v["x"], v["y"], v["form"], c)),
    "efn_E": (SCALES + (B, X, Y, REP),
              lambda v, c: corefn.efn_E(_sp(v), v["b"], v["x"], v["y"], c, rep=v["rep"])),
    "ffn_F": (SCALES + (B, X, Y, REP),
              lambda v, c: corefn.ffn_F(_sp(v), v["b"], v["x"], v["y"], c, rep=v["rep"])),
    "elementary_RN": (SCALES + (Param("N", "int", 0), X, Y),
                      lambda v, c: corefn.elementary_RN(_sp(v), v["N"], v["x"], v["y"])),
    "psi_nr": ((Param("lam", "real"), Param("r", "real"), Param("k", "complex"),
                Param("variant", ("psi1", "psi2"), "psi1")),
               lambda v, c: nonrel.psi_nr(_nr(v), v["variant"])),
    "psi_nr_rep": ((Param("lam", "real"), Param("r", "real"), Param("k", "real"),
                    Param("rep", ("i", "iii", "iv", "v"), "i")),
                   lambda v, c: nonrel.psi_nr_rep(_nr(v), v["rep"], c)),
    "conical_P": ((Param("lam", "real"), Param("r", "real"), Param("k", "complex")),
                  lambda v, c: nonrel.conical_P(_nr(v))),
    "e_nr": ((Param("lam", "real"), Param("r", "real"), Param("k", "complex")),
             lambda v, c: nonrel.e_nr(_nr(v))),
    "toda_F": (SCALES + (Param("eta", "real", 0.0), Param("x", "real"), Param("y", "real"), REP),
               lambda v, c: toda.toda_F(toda.TodaParams(_sp(v), v["eta"]), v["x"], v["y"], v["rep"], c)),
    "toda_H": (SCALES + (X, Y, REP),
               lambda v, c: toda.toda_H(v["x"], v["y"], v["rep"], _sp(v), c)),
    "nr_toda_F": ((Param("lam", "real"), Param("r", "real"), Param("k", "real"), REP),
                  lambda v, c: toda.nr_toda_F(toda.NrTodaParams(v["lam"], v["r"], v["k"]), v["rep"], c)),
    "bessel_K_imag": ((Param("k", "real"), Param("x", "real")),
                      lambda v, c: toda.bessel_K_imag(v["k"], v["x"], c)),
}

def _is_numeric(kind):
    return kind in ("real", "complex")


ALL_PARAMS = {}
NUMERIC_PARAMS = set()
for _params, _ in FUNCTIONS.values():
    for _p in _params:
        ALL_PARAMS.setdefault(_p.name, _p)
        if _is_numeric(_p.kind):
            NUMERIC_PARAMS.add(_p.name)


def _flag(name):
    return "--" + name.replace("_", "-")


def bind(fn, raw):
    """Type-check raw bindings {name: value, name_imag: value} against the
    schema of fn and return {name: value} with defaults filled in."""
    if fn not in FUNCTIONS:
        raise UsageError(f"unknown function {fn!r}; choose from {', '.join(sorted(FUNCTIONS))}")
    params = FUNCTIONS[fn][0]
    names = {p.name for p in params}
    for key, val in raw.items():
        if val is None:
            continue
        base = key[:-5] if key.endswith("_imag") else key
        if base not in names:
            raise UsageError(f"{fn} does not take parameter {_flag(key)}")
    out = {}
    for p in params:
        re_, im_ = raw.get(p.name), raw.get(p.name + "_imag")
        if p.kind == "complex":
            if re_ is None and im_ is None:
                if p.default is None:
                    raise UsageError(f"{fn} needs {_flag(p.name)} (and/or {_flag(p.name + '_imag')})")
                out[p.name] = complex(p.default)
            else:
                out[p.name] = complex(_num(p.name, re_ or 0.0), _num(p.name, im_ or 0.0))
            continue
        if im_ is not None:
            raise UsageError(f"{fn}: parameter {p.name} is {_kind_name(p.kind)}, not complex")
        if re_ is None:
            if p.default is None:
                raise UsageError(f"{fn} needs {_flag(p.name)}")
            re_ = p.default
        if p.kind == "real":
            out[p.name] = _num(p.name, re_)
        elif p.kind == "int":
            try:
                f = float(re_)
            except (TypeError, ValueError):
                raise UsageError(f"{p.name} must be an integer, got {re_!r}") from None
            if not f.is_integer():
                raise UsageError(f"{p.name} must be an integer, got {re_!r}")
            out[p.name] = int(f)
        else:
            if str(re_) not in p.kind:
                raise UsageError(f"{p.name} must be one of {', '.join(p.kind)}, got {re_!r}")
            out[p.name] = str(re_)
    return out


def _kind_name(kind):
    return kind if isinstance(kind, str) else "a choice"


def _num(name, s):
    try:
        v = float(s)
    except (TypeError, ValueError):
        raise UsageError(f"{name} must be a number, got {s!r}") from None
    if not math.isfinite(v):
        raise UsageError(f"{name} must be finite")
    return v


def evaluate(fn, values, cfg=quad.DEFAULT_CONFIG):
    """Evaluate fn at bound values; return the result record."""
    fun = FUNCTIONS[fn][1]
    with quad.recording() as log:
        res = fun(values, cfg)
    rec = {"function": fn, "params": values}
    extra = res if isinstance(res, dict) else {"value": res}
    val = extra.pop("value")
    if val is None:
        rec["value_re"] = rec["value_im"] = None
    else:
        val = complex(val)
        rec["value_re"], rec["value_im"] = val.real, val.imag
    rec["err_est"] = float(sum(r.err_est for r in log)) if log else None
    rec["n_evals"] = int(sum(r.n_evals for r in log))
    rec.update(extra)
    return rec


def _error_record(exc):
    code = exc.exit_code if isinstance(exc, HyperconicalError) else 3
    return {"type": type(exc).__name__, "message": str(exc), "exit_code": code}


# ------------------------------------------------------------ serialisation


def _num_text(x):
    if not math.isfinite(x):
        return "null"
    return format(x, ".17g")


def dumps(obj):
    """Deterministic JSON with every float written to 17 significant
    digits; complex numbers become {"re": .., "im": ..}."""
    if obj is None or isinstance(obj, (bool, str)):
        return json.dumps(obj)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _num_text(float(obj))
    if isinstance(obj, (complex, np.complexfloating)):
        return '{"re": %s, "im": %s}' % (_num_text(obj.real), _num_text(obj.imag))
    if isinstance(obj, dict):
        return "{" + ", ".join(json.dumps(str(k)) + ": " + dumps(v) for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        return "[" + ", ".join(dumps(v) for v in obj) + "]"
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def _decode(v):
    """Inverse of the complex encoding used by dumps, for grid files."""
    if isinstance(v, dict):
        if set(v) == {"re", "im"}:
            return complex(v["re"], v["im"])
        return {k: _decode(x) for k, x in v.items()}
    if isinstance(v, list):
        return [_decode(x) for x in v]
    return v


def _cell(v):
    if v is None:
        return ""
    if isinstance(v, (float, np.floating)):
        return _num_text(float(v)) if math.isfinite(v) else ""
    if isinstance(v, (bool, str, int, np.integer)):
        return str(v)
    return dumps(v)


class Writer:
    """Serialises records in call order as JSON lines or CSV."""

    def __init__(self, stream, fmt, columns):
        self.stream, self.fmt, self.columns = stream, fmt, columns
        self._csv = None

    def meta(self, info):
        if self.fmt == "json":
            self.stream.write(dumps({"meta": info}) + "\n")
        else:
            self.stream.write("# " + dumps(info) + "\n")

    def write(self, rec):
        if self.fmt == "json":
            self.stream.write(dumps(rec) + "\n")
            return
        if self._csv is None:
            self._csv = csv.writer(self.stream, lineterminator="\n")
            self._csv.writerow(self.columns)
        self._csv.writerow([_cell(rec.get(c)) for c in self.columns])


EVAL_COLUMNS = ["function", "params", "value_re", "value_im", "err_est", "n_evals", "kind", "error"]
VERIFY_COLUMNS = ["identity", "suite", "index", "params", "lhs_re", "lhs_im", "rhs_re", "rhs_im",
                  "residual", "tol", "verdict", "error"]
PROBE_COLUMNS = ["probe", "index", "parameter", "measured_re", "measured_im", "reference_re",
                 "reference_im", "ratio_re", "ratio_im"]


# ------------------------------------------------------------------ workers


def _pool_map(fun, tasks, jobs):
    """Order-preserving map over a process pool (in-process for jobs = 1)."""
    if jobs <= 1 or len(tasks) <= 1:
        for t in tasks:
            yield fun(t)
        return
    with cf.ProcessPoolExecutor(max_workers=jobs) as ex:
        yield from ex.map(fun, tasks, chunksize=1)


def _verify_task(task):
    ident_id, index, pt, tol, cfg = task
    ident = registry.REGISTRY[ident_id]
    rec = {"identity": ident_id, "suite": ident.suite, "index": index, "params": pt}
    try:
        rep = ident.run(pt, cfg, tol)
    except Exception as exc:  # reported as a failed point, the run goes on
        rec.update(lhs_re=None, lhs_im=None, rhs_re=None, rhs_im=None, residual=None,
                   tol=ident.tol if tol is None else tol, verdict="error", error=_error_record(exc))
        return rec
    rec.update(lhs_re=rep.lhs.real, lhs_im=rep.lhs.imag, rhs_re=rep.rhs.real, rhs_im=rep.rhs.imag,
               residual=rep.residual, tol=rep.tol, verdict=rep.verdict)
    if rep.extra:
        rec["extra"] = rep.extra
    return rec


def _eval_task(task):
    fn, values, cfg = task
    try:
        return evaluate(fn, values, cfg)
    except Exception as exc:  # recorded per point, the sweep goes on
        return {"function": fn, "params": values, "value_re": None, "value_im": None,
                "err_est": None, "n_evals": 0, "error": _error_record(exc)}


# --------------------------------------------------------------------- probes


def _seq(s):
    if isinstance(s, (list, tuple)):
        return [float(v) for v in s]
    try:
        return [float(v) for v in str(s).split(",") if v.strip()]
    except ValueError:
        raise UsageError(f"bad number sequence {s!r}") from None


def _deviation_rows(seq):
    rows, prev = [], None
    for par, dev in seq:
        rows.append((par, dev, prev, None if prev is None else dev / prev))
        prev = dev
    return rows


def _probe_appendix_b(o, cfg):
    rows = hypgamma.appendix_b_probe(o.a_plus, o.lam, o.z, _seq(o.a_minus_seq))
    out = [(am, m, pr, m / pr) for am, m, pr in rows]
    if o.lam == 1:
        devs = [abs(r[3] - 1) for r in out]
    else:
        devs = [abs(r[1]) for r in out]
    return out, _decreasing(devs)


def _probe_toda_limit(o, cfg):
    t = toda.TodaParams(ScaleParams(o.a_plus, o.a_minus), o.eta)
    seq = toda.toda_limit_probe(t, _seq(o.lambda_seq), o.x, o.y, cfg)
    return _deviation_rows(seq), _decreasing([d for _, d in seq])


def _probe_nr_limit(o, cfg):
    base = nonrel.NrParams.physical(o.mu, o.hbar, o.g, o.x, o.p)
    seq = nonrel.nr_limit_probe(base, _seq(o.beta_seq), cfg)
    return _deviation_rows(seq), _decreasing([d for _, d in seq])


def _probe_yas(o, cfg):
    t = toda.TodaParams(ScaleParams(o.a_plus, o.a_minus), o.eta)
    rows = toda.yas_probe(t, o.x, _seq(o.y_seq), cfg=cfg)
    return [(y, v, f, r) for y, v, f, r in rows], None


def _probe_kas(o, cfg):
    rows = toda.kas_probe(o.lam, o.r, _seq(o.k_seq), o.phi, cfg)
    return [(k, v, f, r) for k, v, f, r in rows], None


def _decreasing(devs):
    return all(b < a for a, b in zip(devs, devs[1:]))


# id: (runner, {option: default}); a None verdict marks an exploratory probe
PROBES = {
    "appendix-b": (_probe_appendix_b, dict(a_plus=1.0, lam=1.0, z=0.2, a_minus_seq="1e-1,1e-2,1e-3")),
    "toda-limit": (_probe_toda_limit, dict(a_plus=1.0, a_minus=1.0, eta=0.2, x=0.4, y=0.7,
                                           lambda_seq="1,2,3")),
    "nr-limit": (_probe_nr_limit, dict(mu=2.0, hbar=1.0, g=0.8, x=0.7, p=1.3, beta_seq="0.3,0.1,0.03")),
    "yas": (_probe_yas, dict(a_plus=1.0, a_minus=1.0, eta=0.0, x=0.3, y_seq="2,4,6,8,10,12")),
    "kas": (_probe_kas, dict(lam=1.0, r=0.5, k_seq="2,4,8,16", phi=-math.pi / 4)),
}
PROBE_OPTIONS = sorted({k for _, d in PROBES.values() for k in d})


def _probe_record(pid, i, row):
    par, meas, ref, ratio = row
    rec = {"probe": pid, "index": i, "parameter": float(par)}
    for key, v in (("measured", meas), ("reference", ref), ("ratio", ratio)):
        if v is None:
            rec[key + "_re"] = rec[key + "_im"] = None
        else:
            v = complex(v)
            rec[key + "_re"], rec[key + "_im"] = v.real, v.imag
    return rec


# ---------------------------------------------------------------- arguments

DEFAULTS = {
    "format": "json",
    "output": None,
    "jobs": None,
    "abs_tol": quad.DEFAULT_CONFIG.abs_tol,
    "rel_tol": quad.DEFAULT_CONFIG.rel_tol,
    "max_subdivisions": quad.DEFAULT_CONFIG.max_subdivisions,
    "meta": False,
    "tol": None,
    "limit": None,
}


def _common(sp):
    g = sp.add_argument_group("output and numerics")
    g.add_argument("--config", help="TOML file with option defaults")
    g.add_argument("--format", choices=("json", "csv"))
    g.add_argument("--output", "-o", help="write to this file instead of stdout")
    g.add_argument("--jobs", "-j", type=int,
                   help="worker processes (default: $HYPERCONICAL_JOBS, else all processors)")
    g.add_argument("--abs-tol", type=float, help="quadrature absolute tolerance")
    g.add_argument("--rel-tol", type=float, help="quadrature relative tolerance")
    g.add_argument("--max-subdivisions", type=int)
    g.add_argument("--meta", action="store_const", const=True,
                   help="emit a metadata header line (contains the wall-clock time)")


def _bindings(sp):
    g = sp.add_argument_group("parameter bindings (complex values: --NAME real part, --NAME-imag imaginary part)")
    for name in sorted(ALL_PARAMS):
        g.add_argument(_flag(name), dest="bind_" + name, metavar="V")
        if name in NUMERIC_PARAMS:
            g.add_argument(_flag(name + "_imag"), dest="bind_" + name + "_imag", metavar="V")


def build_parser():
    ap = argparse.ArgumentParser(prog="hyperconical", description=__doc__.split("\n\n")[0])
    sub = ap.add_subparsers(dest="command", required=True)

    e = sub.add_parser("eval", help="evaluate one function at one point")
    e.add_argument("--fn", help="function id: " + ", ".join(sorted(FUNCTIONS)))
    _bindings(e)
    _common(e)

    s = sub.add_parser("sweep", help="evaluate one function over a grid")
    s.add_argument("--fn")
    s.add_argument("--grid", action="append", default=[], metavar="NAME=SPEC",
                   help="grid axis: start:stop:n (inclusive linspace) or v1,v2,...; "
                        "use NAME_imag for imaginary parts; axes combine as a product")
    _bindings(s)
    _common(s)

    v = sub.add_parser("verify", help="run registered identities")
    v.add_argument("--suite", action="append", default=[], help="suite name (repeatable)")
    v.add_argument("--id", action="append", default=[], dest="ids", help="identity id (repeatable)")
    v.add_argument("--tol", type=float, help="override every selected tolerance")
    v.add_argument("--grid", dest="grid_file",
                   help="JSON lines file of points replacing the default grid (needs --id)")
    v.add_argument("--limit", type=int, help="only the first N points of each identity")
    v.add_argument("--list", action="store_true", help="list suites and identities and exit")
    _common(v)

    p = sub.add_parser("probe", help="run a limit or asymptotics probe")
    p.add_argument("--id", dest="probe_id", help="probe id: " + ", ".join(PROBES))
    for name in PROBE_OPTIONS:
        flag = "--lambda" if name == "lam" else _flag(name)
        p.add_argument(flag, dest="probe_" + name, metavar="V")
    _common(p)
    return ap


def _load_config(path, command):
    if path is None:
        return {}
    try:
        with open(path, "rb") as fh:
            data = tomllib.load(fh)
    except (OSError, tomllib.TOMLDecodeError) as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from None
    out = {k: v for k, v in data.items() if not isinstance(v, dict)}
    out.update(data.get(command, {}))
    return {k.replace("-", "_"): v for k, v in out.items()}


class Options:
    """Parsed arguments with config-file and built-in fallbacks."""

    def __init__(self, ns, config):
        self._ns, self._config = ns, config

    def get(self, name, default=None):
        v = getattr(self._ns, name, None)
        if v is None or v == []:
            v = self._config.get(name)
        if v is None:
            v = DEFAULTS.get(name, default)
        return v


def _jobs(o):
    j = o.get("jobs")
    if j is None:
        env = os.environ.get("HYPERCONICAL_JOBS")
        if env:
            try:
                j = int(env)
            except ValueError:
                raise UsageError(f"HYPERCONICAL_JOBS must be an integer, got {env!r}") from None
    if j is None:
        try:
            j = len(os.sched_getaffinity(0))
        except AttributeError:  # not available on every platform
            j = os.cpu_count() or 1
    j = int(j)
    if j < 1:
        raise UsageError("--jobs must be at least 1")
    return j


def _quad_cfg(o):
    try:
        return quad.QuadConfig(abs_tol=float(o.get("abs_tol")), rel_tol=float(o.get("rel_tol")),
                               max_subdivisions=int(o.get("max_subdivisions")))
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _raw_bindings(o):
    raw = {}
    for name, p in ALL_PARAMS.items():
        for key in (name, name + "_imag"):
            v = o.get("bind_" + key)
            if v is None:
                v = o._config.get(key)
            if v is not None:
                raw[key] = v
    return raw


def _meta_info(command, o):
    import datetime
    from importlib.metadata import PackageNotFoundError, version
    try:
        ver = version("artifact")
    except PackageNotFoundError:
        ver = "unknown"
    return {"schema_version": SCHEMA_VERSION, "package_version": ver, "command": command,
            "time": datetime.datetime.now(datetime.timezone.utc).isoformat()}


# ----------------------------------------------------------------- commands


def cmd_eval(o, out):
    fn = o.get("fn")
    if fn is None:
        raise UsageError("eval needs --fn")
    values = bind(fn, _raw_bindings(o))
    cfg = _quad_cfg(o)
    rec = evaluate(fn, values, cfg)
    w = Writer(out, o.get("format"), EVAL_COLUMNS)
    if o.get("meta"):
        w.meta(_meta_info("eval", o))
    w.write(rec)
    return 0


def _axis(spec):
    if ":" in spec:
        try:
            a, b, n = spec.split(":")
            return [float(v) for v in np.linspace(float(a), float(b), int(n))]
        except ValueError:
            raise UsageError(f"bad grid range {spec!r}; expected start:stop:n") from None
    if isinstance(spec, str):
        return [v.strip() for v in spec.split(",") if v.strip()]
    return list(spec)


def cmd_sweep(o, out):
    fn = o.get("fn")
    if fn is None:
        raise UsageError("sweep needs --fn")
    specs = o.get("grid") or []
    if isinstance(specs, dict):  # config file: [sweep.grid] name = "spec"
        specs = [f"{k}={v}" for k, v in specs.items()]
    axes = []
    for s in specs:
        if "=" not in s:
            raise UsageError(f"bad grid axis {s!r}; expected NAME=SPEC")
        name, spec = s.split("=", 1)
        axes.append((name.strip().replace("-", "_"), _axis(spec.strip())))
    if not axes:
        raise UsageError("sweep needs at least one --grid axis")
    base = _raw_bindings(o)
    cfg = _quad_cfg(o)
    tasks = []
    for combo in itertools.product(*[vals for _, vals in axes]):
        raw = dict(base)
        raw.update({name: v for (name, _), v in zip(axes, combo)})
        tasks.append((fn, bind(fn, raw), cfg))
    w = Writer(out, o.get("format"), EVAL_COLUMNS)
    if o.get("meta"):
        w.meta(_meta_info("sweep", o))
    code = 0
    for rec in _pool_map(_eval_task, tasks, _jobs(o)):
        w.write(rec)
        if "error" in rec:
            code = max(code, rec["error"]["exit_code"])
    return code


def _read_grid(path):
    pts = []
    try:
        with open(path) as fh:
            for n, line in enumerate(fh, 1):
                line = line.strip()
                if not line or line.startswith("#"):
                    continue
                try:
                    pt = json.loads(line)
                except json.JSONDecodeError as exc:
                    raise UsageError(f"{path}:{n}: {exc}") from None
                if not isinstance(pt, dict):
                    raise UsageError(f"{path}:{n}: each line must be a JSON object")
                pts.append(_decode(pt))
    except OSError as exc:
        raise UsageError(f"cannot read grid {path}: {exc}") from None
    return pts


def cmd_verify(o, out):
    if o.get("list"):
        for suite, ids in registry.suites().items():
            for i in ids:
                out.write(f"{suite}\t{i}\t{registry.REGISTRY[i].doc}\n")
        return 0
    ids = []
    for s in o.get("suite") or []:
        try:
            ids += [ident.id for ident in registry.suite_identities(s)]
        except KeyError:
            raise UsageError(f"unknown suite {s!r}; choose from {', '.join(registry.suites())}") from None
    for i in o.get("ids") or []:
        if i not in registry.REGISTRY:
            raise UsageError(f"unknown identity {i!r}")
        ids.append(i)
    if not ids:
        raise UsageError("verify needs --suite or --id")
    ids = list(dict.fromkeys(ids))
    grid = o.get("grid_file")
    if grid is not None and not o.get("ids"):
        raise UsageError("--grid replaces the points of specific identities; give --id")
    override = _read_grid(grid) if grid is not None else None
    tol = o.get("tol")
    limit = o.get("limit")
    cfg = _quad_cfg(o)
    tasks = []
    for i in ids:
        pts = override if override is not None else registry.REGISTRY[i].points()
        if limit is not None:
            pts = pts[:int(limit)]
        tasks += [(i, k, pt, None if tol is None else float(tol), cfg) for k, pt in enumerate(pts)]
    w = Writer(out, o.get("format"), VERIFY_COLUMNS)
    if o.get("meta"):
        w.meta(_meta_info("verify", o))
    ok = True
    for rec in _pool_map(_verify_task, tasks, _jobs(o)):
        w.write(rec)
        ok = ok and rec["verdict"] == "pass"
    return 0 if ok else 1


def cmd_probe(o, out):
    pid = o.get("probe_id") or o._config.get("id")
    if pid not in PROBES:
        raise UsageError(f"probe needs --id, one of {', '.join(PROBES)}")
    runner, defaults = PROBES[pid]
    ns = argparse.Namespace()
    for name in PROBE_OPTIONS:
        v = o.get("probe_" + name)
        if v is None:
            v = o._config.get(name)
        if name not in defaults:
            if v is not None:
                flag = "--lambda" if name == "lam" else _flag(name)
                raise UsageError(f"probe {pid} does not take {flag}")
            continue
        if v is None:
            v = defaults[name]
        if not name.endswith("_seq"):
            v = _num(name, v)
        setattr(ns, name, v)
    rows, verdict = runner(ns, _quad_cfg(o))
    w = Writer(out, o.get("format"), PROBE_COLUMNS)
    if o.get("meta"):
        w.meta(_meta_info("probe", o))
    for i, row in enumerate(rows):
        w.write(_probe_record(pid, i, row))
    return 0 if verdict in (None, True) else 1


COMMANDS = {"eval": cmd_eval, "sweep": cmd_sweep, "verify": cmd_verify, "probe": cmd_probe}


def main(argv=None):
    ns = build_parser().parse_args(argv)
    fh = None
    try:
        o = Options(ns, _load_config(ns.config, ns.command))
        path = o.get("output")
        if path is not None:
            try:
                fh = open(path, "w", newline="")
            except OSError as exc:
                raise UsageError(f"cannot write {path}: {exc}") from None
        return COMMANDS[ns.command](o, fh or sys.stdout)
    except BrokenPipeError:  # reader went away (e.g. piped into head)
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        return 0
    except HyperconicalError as exc:
        code, exc_ = exc.exit_code, exc
    except ValueError as exc:  # argument checks inside the library
        code, exc_ = 2, exc
    except Exception as exc:  # anything else is a numerics failure
        code, exc_ = 3, exc
    finally:
        if fh is not None:
            fh.close()
    print(f"hyperconical: {type(exc_).__name__}: {exc_}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
