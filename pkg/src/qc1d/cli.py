"""Batch driver: generate | analyze | scan.

Every run is described by a RunConfig; the sha256 of its canonical JSON is
embedded in each artifact, so reruns can be recognized and mismatched
resumes refused.  Timestamps live only in the .meta.json sidecars, keeping
the artifacts themselves byte-reproducible.  Exit codes: 0 success, 2
validation failure, 3 a checker refuted the property on the window.
"""
from __future__ import annotations

import argparse
import datetime as _dt
import hashlib
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from . import __version__
from .bands import floquet_bands
from .cf import coefficient_bound_report, continued_fraction
from .eigencount import dirichlet_eigencount
from .flc import (
    Decomposition,
    PieceSet,
    check_flp,
    check_sfdp,
    check_udp,
    decompose,
    detect_eventual_period,
)
from .measures import MeasureWindow, Piece
from .models import fibonacci_word
from .serialize import (
    dumps,
    length_to_dict,
    loads,
    piece_set_from_dict,
    piece_set_to_dict,
    window_from_dict,
    window_to_dict,
)
from .suspension import SuspensionParams, suspend_with_profiles
from .transfer import compile_factors, factor_span, propagate_grid
from .words import (
    Word,
    bernoulli_word,
    circle_map_word,
    gordon_scan,
    load_word,
    word_to_text,
)

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_COUNTEREXAMPLE = 3

_OUT_DIR_ENV = "QC1D_OUT"


class CliError(Exception):
    """Validation failure; printed to stderr, exit code 2."""


@dataclass
class RunConfig:
    """Everything that determines a run's outputs.

    Output paths, resume mode and parallelism degree are carried separately:
    they affect where and how fast results land, never what they contain.
    """

    command: str
    action: str
    params: Dict[str, object]
    seed: Optional[int] = None
    out: Optional[str] = None
    resume: bool = False
    parallelism: int = 1

    def semantic(self) -> Dict[str, object]:
        return {
            "command": self.command,
            "action": self.action,
            "params": self.params,
            "seed": self.seed,
        }

    def config_hash(self) -> str:
        return hashlib.sha256(dumps(self.semantic()).encode("utf-8")).hexdigest()


# -- artifact plumbing ---------------------------------------------------------


def _out_dir() -> str:
    return os.environ.get(_OUT_DIR_ENV, ".")


def _default_out(cfg: RunConfig, suffix: str) -> str:
    name = f"{cfg.action}_{cfg.config_hash()[:10]}{suffix}"
    return os.path.join(_out_dir(), name)


def _write_sidecar(path: str, cfg: RunConfig) -> None:
    meta = {
        "created_at": _dt.datetime.now(_dt.timezone.utc).isoformat(),
        "tool": f"qc1d/{__version__}",
        "config": cfg.semantic(),
        "config_hash": cfg.config_hash(),
    }
    with open(path + ".meta.json", "w", encoding="utf-8") as fh:
        fh.write(json.dumps(meta, indent=2, sort_keys=True) + "\n")


def _embedded_hash(path: str) -> Optional[str]:
    """Pull the embedded config hash back out of an existing artifact."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            head = fh.read(65536)
    except OSError:
        return None
    head = head.lstrip()
    if head.startswith("{"):
        try:
            return json.loads(open(path, encoding="utf-8").read()).get("config_hash")
        except (json.JSONDecodeError, OSError):
            return None
    for line in head.splitlines()[:5]:
        if line.startswith("#") and "config_hash=" in line:
            return line.split("config_hash=", 1)[1].strip()
        for token in line.split():
            if token.startswith("config="):
                return token[len("config="):]
    return None


def _resume_check(path: str, cfg: RunConfig) -> bool:
    """True when the artifact is already up to date; raises on a mismatch."""
    if not os.path.exists(path):
        return False
    found = _embedded_hash(path)
    want = cfg.config_hash()
    if found == want:
        if cfg.resume:
            return True
        return False
    if cfg.resume:
        raise CliError(
            f"{path} was produced by config {found or 'unknown'}, current "
            f"config is {want}; refusing to resume over it"
        )
    return False


def _write_text(path: str, text: str, cfg: RunConfig) -> None:
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)
    _write_sidecar(path, cfg)
    print(path)


def _write_json(path: str, payload: dict, cfg: RunConfig) -> None:
    payload = dict(payload)
    payload["config_hash"] = cfg.config_hash()
    _write_text(path, dumps(payload) + "\n", cfg)


def _csv_text(cfg: RunConfig, columns: Sequence[str], rows) -> str:
    lines = [
        f"# config_hash={cfg.config_hash()}",
        f"# config={dumps(cfg.semantic())}",
        ",".join(columns),
    ]
    for row in rows:
        lines.append(",".join(_fmt(v) for v in row))
    return "\n".join(lines) + "\n"


def _fmt(v) -> str:
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _load_window(path: str) -> MeasureWindow:
    with open(path, encoding="utf-8") as fh:
        d = loads(fh.read())
    if d.get("kind") == "piece":
        from .serialize import piece_from_dict
        p = piece_from_dict(d)
        return MeasureWindow(p.basis.zero, p.length, p.content)
    return window_from_dict(d)


def _load_piece_set(path: str) -> PieceSet:
    with open(path, encoding="utf-8") as fh:
        return PieceSet(piece_set_from_dict(loads(fh.read())))


def _load_period_piece(path: str) -> Piece:
    with open(path, encoding="utf-8") as fh:
        d = loads(fh.read())
    if d.get("kind") == "piece":
        from .serialize import piece_from_dict
        return piece_from_dict(d)
    w = window_from_dict(d)
    return w.as_piece()


# -- generate --------------------------------------------------------------------


def run_generate(cfg: RunConfig) -> int:
    p = cfg.params
    out = cfg.out or _default_out(cfg, ".txt" if cfg.action != "suspend" else ".json")
    if _resume_check(out, cfg):
        print(out)
        return EXIT_OK

    if cfg.action == "fibonacci":
        word = fibonacci_word(int(p["iterations"]), p.get("max_length"))
        _write_word(out, word, cfg)
    elif cfg.action == "circle":
        word = circle_map_word(p["alpha"], p["beta"], (int(p["n_from"]), int(p["n_to"])))
        _write_word(out, word, cfg)
    elif cfg.action == "bernoulli":
        if cfg.seed is None:
            raise CliError("generate bernoulli requires --seed")
        word = bernoulli_word(float(p["p"]), (int(p["n_from"]), int(p["n_to"])), cfg.seed)
        _write_word(out, word, cfg)
    elif cfg.action == "suspend":
        word = load_word(p["word"])
        pieces = _load_piece_set(p["profiles"])
        params = SuspensionParams({q.label: q for q in pieces})
        dec = suspend_with_profiles(word, params)
        _write_json(out, window_to_dict(dec.window), cfg)
    else:
        raise CliError(f"unknown generate action {cfg.action!r}")
    return EXIT_OK


def _write_word(path: str, word: Word, cfg: RunConfig) -> None:
    text = word_to_text(word)
    nl = text.index("\n")
    text = text[:nl] + f" config={cfg.config_hash()}" + text[nl:]
    _write_text(path, text, cfg)


# -- analyze ---------------------------------------------------------------------


def run_analyze(cfg: RunConfig) -> int:
    p = cfg.params
    out = cfg.out or _default_out(cfg, ".json")
    if _resume_check(out, cfg):
        print(out)
        return EXIT_OK

    if cfg.action == "sfdp":
        window = _load_window(p["window"])
        pieces = _load_piece_set(p["pieces"])
        x0 = p.get("x0")
        dec = decompose(window, pieces, window.origin if x0 is None else x0)
        ce = check_sfdp(window, dec, p["ell"])
        report = {
            "kind": "checker_report",
            "property": "sfdp",
            "scope": "window",
            "ell": str(p["ell"]),
            "pieces": len(dec),
            "verdict": "ok" if ce is None else "counterexample",
        }
        if ce is not None:
            report["counterexample"] = {
                "y": length_to_dict(ce.y),
                "z": length_to_dict(ce.z),
                "label_y": ce.label_y,
                "label_z": ce.label_z,
                "length_y": length_to_dict(ce.length_y),
                "length_z": length_to_dict(ce.length_z),
            }
        _write_json(out, report, cfg)
        return EXIT_OK if ce is None else EXIT_COUNTEREXAMPLE

    if cfg.action == "udp":
        window = _load_window(p["window"])
        pieces = _load_piece_set(p["pieces"])
        ok = check_udp(window, pieces, p["radius"])
        _write_json(out, {
            "kind": "checker_report",
            "property": "udp",
            "scope": "window",
            "radius": str(p["radius"]),
            "verdict": "ok" if ok else "counterexample",
        }, cfg)
        return EXIT_OK if ok else EXIT_COUNTEREXAMPLE

    if cfg.action == "flp":
        window = _load_window(p["window"])
        L_list = [t.strip() for t in str(p["L"]).split(",")]
        rep = check_flp(window, float(Fraction(str(p["rho"]))), L_list)
        _write_json(out, {
            "kind": "checker_report",
            "property": "flp",
            "scope": "window",
            "rho": rep.rho,
            "counts": [[L, n] for L, n in rep.counts],
            "anchors_used": [[L, n] for L, n in rep.anchors_used],
            "has_unanchored_points": rep.has_unanchored_points,
            "max_anchor_gap": rep.max_anchor_gap,
        }, cfg)
        return EXIT_OK

    if cfg.action == "period":
        window = _load_window(p["window"])
        found = detect_eventual_period(window)
        report = {
            "kind": "checker_report",
            "property": "eventual_period",
            "scope": "window",
            "verdict": "periodic_tail" if found else "none",
        }
        if found:
            x0, per = found
            report["x0"] = length_to_dict(x0)
            report["period"] = length_to_dict(per)
            report["x0_approx"] = x0.value
            report["period_approx"] = per.value
        _write_json(out, report, cfg)
        return EXIT_OK

    if cfg.action == "gordon":
        word = load_word(p["word"])
        if p.get("p_list"):
            p_values = [int(t) for t in str(p["p_list"]).split(",")]
        elif p.get("p_from_cf"):
            alpha = p.get("alpha")
            if not alpha:
                raise CliError("--p-from-cf needs --alpha")
            cf = continued_fraction(alpha, int(p.get("cf_terms", 12)))
            limit = (word.stop - word.start) // 3
            p_values = sorted({q for q in cf.denominators() if 1 <= q <= limit})
            if not p_values:
                raise CliError("no admissible convergent denominators for this window")
        else:
            raise CliError("analyze gordon needs --p or --p-from-cf")
        table = []
        for q in p_values:
            rep = gordon_scan(word, q)
            table.append({
                "p": q,
                "positions_scanned": rep.positions_scanned,
                "hits": rep.hits,
                "density": rep.density,
            })
        _write_json(out, {
            "kind": "checker_report",
            "property": "gordon",
            "scope": "window",
            "table": table,
        }, cfg)
        return EXIT_OK

    if cfg.action == "cf":
        alpha = p["alpha"]
        cf = continued_fraction(alpha, int(p.get("terms", 20)))
        bound = coefficient_bound_report(cf, int(p.get("threshold", 4)))
        _write_json(out, {
            "kind": "cf_report",
            "alpha": str(alpha),
            "coefficients": list(cf.coefficients),
            "terminated": cf.terminated,
            "convergents": [[pk, qk] for pk, qk in cf.convergents()],
            "bound": {
                "threshold": bound.threshold,
                "terms_checked": bound.terms_checked,
                "count_at_or_above": bound.count_at_or_above,
                "positions": list(bound.positions),
                "min_coefficient": bound.min_coefficient,
                "all_satisfy": bound.all_satisfy,
            },
        }, cfg)
        return EXIT_OK

    raise CliError(f"unknown analyze action {cfg.action!r}")


# -- scan ------------------------------------------------------------------------


def _scan_chunk(payload) -> List[Tuple[float, float, float, float, int]]:
    factors, energies, span = payload
    E = np.asarray(energies, dtype=np.float64)
    G = propagate_grid(factors, E)
    tr = G.trace()
    ln = G.frobenius_log()
    rows = []
    for i in range(E.shape[0]):
        t = float(tr[i])
        flag = int(np.isfinite(t) and abs(t) <= 2.0)
        rows.append((float(E[i]), t, float(ln[i]), float(ln[i]) / span, flag))
    return rows


def _scan_records(factors, energies: np.ndarray, span: float,
                  parallelism: int) -> List[Tuple[float, float, float, float, int]]:
    """Per-energy records, chunked; merged in grid order so the output does
    not depend on the parallelism degree."""
    if parallelism <= 1 or energies.shape[0] < 2 * parallelism:
        return _scan_chunk((factors, energies.tolist(), span))
    chunks = np.array_split(energies, parallelism)
    payloads = [(factors, c.tolist(), span) for c in chunks if c.shape[0]]
    rows: List[Tuple[float, float, float, float, int]] = []
    with ProcessPoolExecutor(max_workers=parallelism) as pool:
        for part in pool.map(_scan_chunk, payloads):
            rows.extend(part)
    return rows


_CSV_COLUMNS = ("E", "trace", "logscale", "gamma", "band_flag")


def run_scan(cfg: RunConfig) -> int:
    p = cfg.params
    if cfg.action == "bands":
        base = cfg.out or _default_out(cfg, "")
        if base.endswith(".json") or base.endswith(".csv"):
            base = base.rsplit(".", 1)[0]
        csv_path, json_path = base + ".csv", base + ".json"
        if _resume_check(json_path, cfg) and _resume_check(csv_path, cfg):
            print(csv_path)
            print(json_path)
            return EXIT_OK
        period = _load_period_piece(p["period"])
        e_min = float(p.get("emin", 0.0))
        e_max = float(p["emax"])
        res = int(p.get("resolution", 4000))
        factors = compile_factors(period)
        span = factor_span(factors)
        E = np.linspace(e_min, e_max, res)
        rows = _scan_records(factors, E, span, cfg.parallelism)
        _write_text(csv_path, _csv_text(cfg, _CSV_COLUMNS, rows), cfg)
        report = floquet_bands(period, e_min, e_max, grid_points=res,
                               tol=float(p.get("tol", 1e-8)))
        _write_json(json_path, {
            "kind": "band_report",
            "e_min": report.e_min,
            "e_max": report.e_max,
            "tol": report.tol,
            "grid_points": report.grid_points,
            "total_measure": report.total_measure,
            "bands": [
                {"lo": b.lo, "hi": b.hi,
                 "lo_clipped": b.lo_clipped, "hi_clipped": b.hi_clipped}
                for b in report.bands
            ],
        }, cfg)
        return EXIT_OK

    if cfg.action == "lyapunov":
        out = cfg.out or _default_out(cfg, ".csv")
        if _resume_check(out, cfg):
            print(out)
            return EXIT_OK
        window = _load_window(p["window"])
        e_min = float(p.get("emin", 1.0))
        e_max = float(p.get("emax", 20.0))
        n = int(p.get("energies", 100))
        if cfg.seed is not None:
            rng = np.random.default_rng(cfg.seed)
            E = np.sort(rng.uniform(e_min, e_max, n))
        else:
            E = np.linspace(e_min, e_max, n)
        factors = compile_factors(window)
        span = factor_span(factors)
        rows = _scan_records(factors, E, span, cfg.parallelism)
        _write_text(out, _csv_text(cfg, _CSV_COLUMNS, rows), cfg)
        return EXIT_OK

    if cfg.action == "eigencount":
        out = cfg.out or _default_out(cfg, ".csv")
        if _resume_check(out, cfg):
            print(out)
            return EXIT_OK
        window = _load_window(p["window"])
        e_min = float(p.get("emin", 0.0))
        e_max = float(p["emax"])
        n = int(p.get("energies", 100))
        E = np.linspace(e_min, e_max, n)
        factors = compile_factors(window)
        rows = [(float(e), dirichlet_eigencount(factors, float(e))) for e in E]
        _write_text(out, _csv_text(cfg, ("E", "count"), rows), cfg)
        return EXIT_OK

    raise CliError(f"unknown scan action {cfg.action!r}")


# -- argument parsing --------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="qc1d",
        description="Quasicrystal measure potentials: generation, exact "
                    "local-complexity analysis, and spectral scans.",
    )
    top.add_argument("--config", help="JSON file with command/action/params defaults")
    sub = top.add_subparsers(dest="command")

    gen = sub.add_parser("generate", help="produce word or window artifacts")
    gsub = gen.add_subparsers(dest="action")

    g_fib = gsub.add_parser("fibonacci")
    g_fib.add_argument("--iterations", type=int, required=True)
    g_fib.add_argument("--max-length", type=int, dest="max_length")

    g_circle = gsub.add_parser("circle")
    g_circle.add_argument("--alpha", required=True)
    g_circle.add_argument("--beta", required=True)
    g_circle.add_argument("-n", "--n-to", type=int, dest="n_to", required=True)
    g_circle.add_argument("--n-from", type=int, dest="n_from", default=0)

    g_bern = gsub.add_parser("bernoulli")
    g_bern.add_argument("--p", type=float, required=True)
    g_bern.add_argument("-n", "--n-to", type=int, dest="n_to", required=True)
    g_bern.add_argument("--n-from", type=int, dest="n_from", default=0)

    g_susp = gsub.add_parser("suspend")
    g_susp.add_argument("--word", required=True)
    g_susp.add_argument("--profiles", required=True)

    ana = sub.add_parser("analyze", help="run window checkers and expansions")
    asub = ana.add_subparsers(dest="action")

    a_sfdp = asub.add_parser("sfdp")
    a_sfdp.add_argument("--window", required=True)
    a_sfdp.add_argument("--pieces", required=True)
    a_sfdp.add_argument("--ell", required=True)
    a_sfdp.add_argument("--x0")

    a_udp = asub.add_parser("udp")
    a_udp.add_argument("--window", required=True)
    a_udp.add_argument("--pieces", required=True)
    a_udp.add_argument("--radius", required=True)

    a_flp = asub.add_parser("flp")
    a_flp.add_argument("--window", required=True)
    a_flp.add_argument("--rho", required=True)
    a_flp.add_argument("--L", required=True, help="comma-separated patch radii")

    a_per = asub.add_parser("period")
    a_per.add_argument("--window", required=True)

    a_gor = asub.add_parser("gordon")
    a_gor.add_argument("--word", required=True)
    a_gor.add_argument("--p", dest="p_list", help="comma-separated periods")
    a_gor.add_argument("--p-from-cf", dest="p_from_cf", action="store_true")
    a_gor.add_argument("--alpha")
    a_gor.add_argument("--cf-terms", type=int, dest="cf_terms", default=12)

    a_cf = asub.add_parser("cf")
    a_cf.add_argument("--alpha", required=True)
    a_cf.add_argument("-n", "--terms", type=int, dest="terms", default=20)
    a_cf.add_argument("--threshold", type=int, default=4)

    scn = sub.add_parser("scan", help="spectral scans over energy grids")
    ssub = scn.add_subparsers(dest="action")

    s_bands = ssub.add_parser("bands")
    s_bands.add_argument("--period", required=True)
    s_bands.add_argument("--emin", type=float, default=0.0)
    s_bands.add_argument("--emax", type=float, required=True)
    s_bands.add_argument("--resolution", type=int, default=4000)
    s_bands.add_argument("--tol", type=float, default=1e-8)

    s_lyap = ssub.add_parser("lyapunov")
    s_lyap.add_argument("--window", required=True)
    s_lyap.add_argument("--emin", type=float, default=1.0)
    s_lyap.add_argument("--emax", type=float, default=20.0)
    s_lyap.add_argument("--energies", type=int, default=100)

    s_eig = ssub.add_parser("eigencount")
    s_eig.add_argument("--window", required=True)
    s_eig.add_argument("--emin", type=float, default=0.0)
    s_eig.add_argument("--emax", type=float, required=True)
    s_eig.add_argument("--energies", type=int, default=100)

    for sp in (g_fib, g_circle, g_bern, g_susp, a_sfdp, a_udp, a_flp, a_per,
               a_gor, a_cf, s_bands, s_lyap, s_eig):
        sp.add_argument("--out")
        sp.add_argument("--seed", type=int)
        sp.add_argument("--resume", action="store_true")
        sp.add_argument("--parallelism", type=int, default=1)
    return top


_PARAM_KEYS = {
    ("generate", "fibonacci"): ("iterations", "max_length"),
    ("generate", "circle"): ("alpha", "beta", "n_from", "n_to"),
    ("generate", "bernoulli"): ("p", "n_from", "n_to"),
    ("generate", "suspend"): ("word", "profiles"),
    ("analyze", "sfdp"): ("window", "pieces", "ell", "x0"),
    ("analyze", "udp"): ("window", "pieces", "radius"),
    ("analyze", "flp"): ("window", "rho", "L"),
    ("analyze", "period"): ("window",),
    ("analyze", "gordon"): ("word", "p_list", "p_from_cf", "alpha", "cf_terms"),
    ("analyze", "cf"): ("alpha", "terms", "threshold"),
    ("scan", "bands"): ("period", "emin", "emax", "resolution", "tol"),
    ("scan", "lyapunov"): ("window", "emin", "emax", "energies"),
    ("scan", "eigencount"): ("window", "emin", "emax", "energies"),
}


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    command = args.command
    action = getattr(args, "action", None)
    file_cfg: Dict[str, object] = {}
    if getattr(args, "config", None):
        with open(args.config, encoding="utf-8") as fh:
            file_cfg = json.load(fh)
        command = command or file_cfg.get("command")
        action = action or file_cfg.get("action")
    if not command or not action:
        raise CliError("no command/action given (flags or --config)")
    keys = _PARAM_KEYS.get((command, action))
    if keys is None:
        raise CliError(f"unknown command {command!r} {action!r}")
    params: Dict[str, object] = {}
    base = file_cfg.get("params", {})
    if not isinstance(base, dict):
        raise CliError("config field 'params' must be an object")
    for k in keys:
        v = getattr(args, k, None)
        if v is None and k in base:
            v = base[k]
        if v is not None and v is not False:
            params[k] = v
    seed = getattr(args, "seed", None)
    if seed is None:
        seed = file_cfg.get("seed")
    return RunConfig(
        command=command,
        action=action,
        params=params,
        seed=seed,
        out=getattr(args, "out", None) or file_cfg.get("out"),
        resume=bool(getattr(args, "resume", False)),
        parallelism=max(1, int(getattr(args, "parallelism", 1) or 1)),
    )


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if not getattr(args, "command", None) and not getattr(args, "config", None):
        parser.print_help()
        return EXIT_VALIDATION
    try:
        cfg = _config_from_args(args)
        print(dumps({"effective_config": cfg.semantic(),
                     "config_hash": cfg.config_hash()}))
        if cfg.command == "generate":
            return run_generate(cfg)
        if cfg.command == "analyze":
            return run_analyze(cfg)
        if cfg.command == "scan":
            return run_scan(cfg)
        raise CliError(f"unknown command {cfg.command!r}")
    except CliError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_VALIDATION
    except (ValueError, KeyError, OSError, ArithmeticError) as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
