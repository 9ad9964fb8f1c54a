"""Command-line front end: compare an indoor RIS against ambient wall reflections.

Subcommands write CSV files with columns ``value,cdf,series_label,unit``,
a gnuplot recipe and a JSON manifest. Exit codes: 0 success, 2 bad
configuration, 3 numerical or calibration failure.
"""

import argparse
import configparser
import dataclasses
import hashlib
import json
import math
import re
import sys
import time
import warnings
from pathlib import Path

from risroom import __version__
from risroom._backend import BACKEND
from risroom.materials import (
    INDEX_CONVENTIONS,
    CarrierConfig,
    fresnel_spectrum,
    itu_permittivity,
    material_from_itu,
)
from risroom.numerics import QuadratureError, bessel_j, bessel_y, hankel1
from risroom.propagation import mirror, weyl_reflected_field
from risroom.ris import (
    RIS_NORMALIZATION,
    CalibrationError,
    SmallApertureWarning,
    calibrate_ris_normalization,
    fit_normalization,
    reference_geometries,
)
from risroom.room import ImageSource, RoomGeometry, image_contribution
from risroom.study import (
    StudyConfig,
    ambient_tables,
    placement,
    ris_tables,
    run_samples,
    size_tables,
)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERIC = 3

# Aperture sweep used when a config lists no [ris] sizes.
DEFAULT_RIS_SIZES = (0.25, 0.5, 0.75, 1.0, 1.25, 1.5)

SCHEMA = {
    "carrier": {"fc"},
    "room": {"w", "beta"},
    "material": {"name", "eps_r", "mu_r", "index_convention"},
    "ris": {"sizes", "pitch", "center", "phase_bits"},
    "study": {"samples", "seed", "m", "ambient_mode", "wall_standoff"},
}


class ConfigError(ValueError):
    pass


def _line_index(text):
    """Map (section, key) -> 1-based line number, plus section header lines."""
    where = {}
    section = None
    for no, line in enumerate(text.splitlines(), 1):
        stripped = line.strip()
        m = re.match(r"\[([^\]]+)\]", stripped)
        if m:
            section = m.group(1).strip().lower()
            where.setdefault((section, None), no)
            continue
        m = re.match(r"([A-Za-z_][\w]*)\s*[=:]", stripped)
        if m and section is not None:
            where[(section, m.group(1).lower())] = no
    return where


def parse_config(path):
    """Read an INI study description into a validated :class:`StudyConfig`."""
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError(f"{path}: cannot read config ({exc.strerror})") from exc
    lines = _line_index(text)
    parser = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
    try:
        parser.read_string(text, source=str(path))
    except configparser.Error as exc:
        raise ConfigError(f"{path}: {exc}") from exc

    def fail(section, key, message):
        no = lines.get((section, key)) or lines.get((section, None))
        loc = f"{path}:{no}" if no else str(path)
        raise ConfigError(f"{loc}: [{section}] {key or ''}: {message}".replace(" : ", ": "))

    for section in parser.sections():
        if section.lower() not in SCHEMA:
            fail(section.lower(), None, "unknown section")
        for key in parser[section]:
            if key not in SCHEMA[section.lower()]:
                fail(section.lower(), key, "unknown key")

    def get(section, key, convert, default=None, required=False):
        if parser.has_option(section, key):
            raw = parser.get(section, key)
            try:
                return convert(raw)
            except (ValueError, TypeError) as exc:
                fail(section, key, f"cannot parse {raw!r} ({exc})")
        if required:
            fail(section, key, "missing required key")
        return default

    def floats(raw):
        return tuple(float(v) for v in raw.replace(",", " ").split())

    fc = get("carrier", "fc", float, 28e9)
    try:
        carrier = CarrierConfig(fc)
    except ValueError as exc:
        fail("carrier", "fc", str(exc))

    W = get("room", "w", float, required=True)
    beta = get("room", "beta", float, 1.0)
    try:
        room = RoomGeometry(W, beta)
    except ValueError as exc:
        fail("room", "beta" if W > 0 else "w", str(exc))

    name = get("material", "name", str.strip, required=True)
    convention = get("material", "index_convention", str.strip, "paper")
    if convention not in INDEX_CONVENTIONS:
        fail("material", "index_convention", f"must be one of {INDEX_CONVENTIONS}")
    eps_r = get("material", "eps_r", lambda v: complex(v.replace(" ", "")))
    mu_r = get("material", "mu_r", lambda v: complex(v.replace(" ", "")), 1.0)
    try:
        material = material_from_itu(name, fc, index_convention=convention, eps_r=eps_r, mu_r=mu_r)
    except ValueError as exc:
        fail("material", "name", str(exc))

    sizes = get("ris", "sizes", floats)
    if sizes is None:
        sizes = tuple(L for L in DEFAULT_RIS_SIZES if L <= W)
    fields = dict(
        room=room,
        material=material,
        carrier=carrier,
        M=get("study", "m", int, 3),
        samples=get("study", "samples", int, 2000),
        seed=get("study", "seed", int, 0),
        ambient_mode=get("study", "ambient_mode", str.strip, "both"),
        ris_sizes=sizes,
        pitch=get("ris", "pitch", float),
        wall_standoff=get("study", "wall_standoff", float),
        ris_center=get("ris", "center", float, 0.0),
        phase_bits=get("ris", "phase_bits", int),
    )
    try:
        return StudyConfig(**fields)
    except ValueError as exc:
        msg = str(exc)
        section, key = "study", None
        for probe, sec, k in (
            ("RIS size", "ris", "sizes"),
            ("pitch", "ris", "pitch"),
            ("phase_bits", "ris", "phase_bits"),
            ("samples", "study", "samples"),
            ("seed", "study", "seed"),
            ("ambient_mode", "study", "ambient_mode"),
            ("standoff", "study", "wall_standoff"),
            ("M must", "study", "m"),
        ):
            if probe in msg:
                section, key = sec, k
                break
        fail(section, key, msg)


def config_hash(config):
    blob = json.dumps(config.canonical(), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()


def _fmt(v):
    return format(v, ".12g")


def write_cdf_csv(path, series):
    """``series`` is a list of ``(label, CdfTable)``."""
    with open(path, "w", newline="") as fh:
        fh.write("value,cdf,series_label,unit\n")
        for label, table in series:
            for value, p in table.points():
                fh.write(f"{_fmt(value)},{_fmt(p)},{label},{table.unit}\n")


def write_plot_recipe(path, csv_name, labels, xlabel):
    lines = [
        "# gnuplot recipe: columns value,cdf,series_label,unit",
        "set datafile separator ','",
        f"set xlabel '{xlabel}'",
        "set ylabel 'CDF'",
        "set key bottom right",
    ]
    plots = [
        f"'{csv_name}' using ((strcol(3) eq '{lab}') ? $1 : NaN):2 skip 1 with steps title '{lab}'"
        for lab in labels
    ]
    lines.append("plot " + ", \\\n     ".join(plots))
    Path(path).write_text("\n".join(lines) + "\n")


def write_manifest(path, config, started, outputs):
    manifest = {
        "config_hash": config_hash(config),
        "tool_version": __version__,
        "backend": BACKEND,
        "seed": config.seed,
        "wall_clock": round(time.time() - started, 3),
        "output_paths": [str(p) for p in outputs],
    }
    Path(path).write_text(json.dumps(manifest, indent=2) + "\n")


def _emit(out, stem, series, xlabel, config, started):
    out.mkdir(parents=True, exist_ok=True)
    csv_path = out / f"{stem}.csv"
    gp_path = out / f"{stem}.gp"
    write_cdf_csv(csv_path, series)
    write_plot_recipe(gp_path, csv_path.name, [lab for lab, _ in series], xlabel)
    write_manifest(out / f"{stem}.manifest.json", config, started, [csv_path, gp_path])
    return csv_path


def _study_command(args, stem):
    config = parse_config(args.config)
    if args.seed is not None:
        config = dataclasses.replace(config, seed=args.seed)
    if stem == "ris_cdf" and not config.ris_sizes:
        raise ConfigError(f"{args.config}: [ris] sizes: no aperture at or below W")
    started = time.time()
    results = run_samples(config, args.workers, sizes=(stem == "equivalent_size"))
    out = Path(args.out)
    if stem == "ambient_cdf":
        series = list(ambient_tables(results, config.modes).items())
        path = _emit(out, stem, series, "power gain [dB]", config, started)
    elif stem == "ris_cdf":
        series = [(f"L={_fmt(L)}m", t) for L, t in ris_tables(results, config.ris_sizes).items()]
        path = _emit(out, stem, series, "optimal RIS power gain [dB]", config, started)
    else:
        dists = size_tables(results, config.modes)
        series = [(mode, d.table) for mode, d in dists.items()]
        path = _emit(out, stem, series, "equivalent RIS size [m]", config, started)
        with open(out / f"{stem}_summary.csv", "w", newline="") as fh:
            fh.write("series_label,samples,saturated,degenerate,q50,q90\n")
            for mode, d in dists.items():
                fh.write(
                    f"{mode},{len(d.table)},{d.saturated},{d.degenerate},"
                    f"{_fmt(d.table.quantile(0.5))},{_fmt(d.table.quantile(0.9))}\n"
                )
                print(f"{mode}: q50 = {d.table.quantile(0.5):.3f} m, q90 = {d.table.quantile(0.9):.3f} m, "
                      f"saturated {d.saturated}/{len(d.table)}")
    print(f"wrote {path}")
    return EXIT_OK


def _material_info(args):
    carrier = CarrierConfig(args.fc)
    material = material_from_itu(args.name, args.fc, index_convention=args.index_convention)
    eps = itu_permittivity(args.name, args.fc)
    r0 = fresnel_spectrum(0.0, material, carrier)
    print(f"material        {material.name}")
    print(f"fc              {args.fc:.6g} Hz (lambda_c = {carrier.lambda_c * 1e3:.4f} mm)")
    print(f"ITU eps         {eps.real:.6f} {eps.imag:+.6f}j")
    print(f"convention      {args.index_convention}")
    print(f"n               {material.n.real:.6f} {material.n.imag:+.6f}j")
    print(f"R(0)            {r0.real:.6f} {r0.imag:+.6f}j  |R(0)| = {abs(r0):.6f}")
    return EXIT_OK


def run_validation(carrier, material, geometries=8, seed=0):
    """Calibration and oracle-equivalence checks; returns ``(ok, report_lines)``."""
    lines = []
    ok = True

    h0 = hankel1(0, 1.0)
    wr = max(
        abs(bessel_j(1, x) * bessel_y(0, x) - bessel_j(0, x) * bessel_y(1, x) - 2 / (math.pi * x))
        for x in (0.1, 1.0, 10.0, 100.0, 1000.0)
    )
    good = abs(h0 - complex(0.7651976866, 0.0882569642)) < 1e-9 and wr < 1e-10
    ok &= good
    lines.append(f"{'PASS' if good else 'FAIL'} special functions: H0(1) = {h0:.10f}, Wronskian residual {wr:.2e}")

    for i, geom in enumerate(reference_geometries(carrier)):
        kappa = fit_normalization(carrier, *geom)
        dev = abs(kappa / RIS_NORMALIZATION - 1)
        good = dev <= 0.05
        ok &= good
        lines.append(f"{'PASS' if good else 'FAIL'} calibration geometry {i}: kappa/(-mu0) - 1 deviation {dev:.3%}")
    try:
        calibrate_ris_normalization(carrier)
    except CalibrationError as exc:
        ok = False
        lines.append(f"FAIL {exc}")

    config = StudyConfig(RoomGeometry(10.0), material, carrier, samples=geometries, seed=seed)
    worst = 0.0
    for i in range(geometries):
        pair = placement(config, i)
        img = ImageSource(mirror(pair.tx), 0, 1)
        specular = image_contribution(img, pair.rx, material, carrier)
        exact = weyl_reflected_field(pair.rx, pair.tx, material, carrier)
        worst = max(worst, abs(abs(specular) - abs(exact)) / abs(exact))
    good = worst < 0.03
    ok &= good
    lines.append(f"{'PASS' if good else 'FAIL'} specular vs spectral first-order reflection: worst {worst:.2%} over {geometries} geometries")
    return ok, lines


def _validate(args):
    if args.config:
        config = parse_config(args.config)
        carrier, material = config.carrier, config.material
    else:
        carrier = CarrierConfig()
        material = material_from_itu("concrete", carrier.fc)
    ok, lines = run_validation(carrier, material)
    for line in lines:
        print(line)
    return EXIT_OK if ok else EXIT_NUMERIC


def build_parser():
    parser = argparse.ArgumentParser(prog="risroom", description="Compare an indoor RIS against ambient wall reflections.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__} ({BACKEND} kernels)")
    sub = parser.add_subparsers(dest="command", required=True)

    def study_args(p):
        p.add_argument("--config", required=True, help="INI study description")
        p.add_argument("--out", default="out", help="output directory")
        p.add_argument("--seed", type=int, help="override the config seed")
        p.add_argument("--workers", type=int, default=1, help="worker processes (results do not depend on it)")

    for name, stem in (("ambient-cdf", "ambient_cdf"), ("ris-cdf", "ris_cdf"), ("compare", "equivalent_size")):
        p = sub.add_parser(name)
        study_args(p)
        p.set_defaults(func=lambda a, stem=stem: _study_command(a, stem))

    p = sub.add_parser("material-info")
    p.add_argument("name")
    p.add_argument("fc", type=float, help="carrier frequency in Hz")
    p.add_argument("--index-convention", choices=INDEX_CONVENTIONS, default="paper")
    p.set_defaults(func=_material_info)

    p = sub.add_parser("validate")
    p.add_argument("--config", help="take carrier and material from this config")
    p.set_defaults(func=_validate)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", SmallApertureWarning)
            return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (QuadratureError, CalibrationError, FloatingPointError, ArithmeticError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG if args.command == "material-info" else EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
