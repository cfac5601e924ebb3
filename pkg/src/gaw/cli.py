"""Command-line entry point: ``gaw gen|measure|wave|replay``.

Every command that writes files also writes ``<output>.manifest.json``
holding the rule id, seed, resolved parameters, embedded input files and
a SHA-256 of each output. ``gaw replay`` rebuilds the outputs from the
manifest alone.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import __version__
from .graphics import ORIENTATIONS, CELL_STATES, gen_density_field, gen_hommage_klee, gen_motif_grid, gen_ncorner
from .manifest import GenerationManifest, ManifestError, VersionMismatchError, sha256_hex
from .measures import block_entropy, entropy, grid_symbol_distribution, max_entropy, redundancy
from .raster import pgm_to_grid, read_csv_grid, write_pgm
from .rng import MASK64, Rng
from .scene import Rect, VectorScene, crop
from .text import default_lexicon_text, default_templates_text, gen_text, parse_lexicon, parse_templates
from .waves import (
    field_to_csv,
    field_to_gray,
    load_spectrum,
    significant_wave_height,
    spectrum_heatmap,
    synthesize_from_spectrum,
)

SEED_ENV = "GAW_DEFAULT_SEED"


class UsageError(ValueError):
    pass


# ---------------------------------------------------------------------------
# renderers: (params, seed, inputs) -> ({role: bytes}, extra)
# They are the only place outputs are produced, for both fresh runs and replays.


def _finish_scene(scene: VectorScene, p: dict) -> bytes:
    if p.get("crop"):
        scene = crop(scene, Rect(*p["crop"]))
    return scene.to_svg().encode("utf-8")


def render_ncorner(p, seed, inputs):
    w, h, m = p["width"], p["height"], p["margin"]
    line = gen_ncorner(p["n"], Rect(m, m, w - m, h - m), Rng(seed))
    scene = VectorScene(w, h, (line,), p["stroke_width"]).clipped()
    return {"main": _finish_scene(scene, p)}, {}


def render_grid(p, seed, inputs):
    params = {"n": p["n"]} if p["motif"] == "ncorner" else {}
    scene = gen_motif_grid(
        p["rows"], p["cols"], (p["motif"], params), p["margin"], Rng(seed), p["cell_size"], p["stroke_width"]
    )
    return {"main": _finish_scene(scene, p)}, {}


def render_density(p, seed, inputs):
    w, h, m = p["width"], p["height"], p["margin"]
    scene = gen_density_field(
        Rect(m, m, w - m, h - m), p["count"], p["orientations"], p["density"], Rng(seed), p["length"]
    )
    scene = VectorScene(scene.width, scene.height, scene.strokes, p["stroke_width"])
    return {"main": _finish_scene(scene, p)}, {}


def render_hommage(p, seed, inputs):
    scene = gen_hommage_klee(
        p["rows"], p["cols"], p["jitter"], dict(p["states"]), tuple(p["hatch"]), Rng(seed),
        p["cell_size"], p["stroke_width"],
    )
    return {"main": _finish_scene(scene, p)}, {}


def render_lutz(p, seed, inputs):
    lexicon, connectives = parse_lexicon(inputs["lexicon"].decode("utf-8"))
    templates = parse_templates(inputs["templates"].decode("utf-8"))
    lines = gen_text(lexicon, templates, connectives, p["n"], Rng(seed))
    return {"main": ("\n".join(lines) + "\n").encode("utf-8")}, {}


def _grid_from_input(data: bytes, fmt: str, k):
    if fmt == "pgm":
        return pgm_to_grid(data, k if k is not None else 8)
    return read_csv_grid(data.decode("utf-8"), k)


def measure_report(grid, blocks) -> str:
    dist = grid_symbol_distribution(grid)
    h = entropy(dist)
    hmax = max_entropy(grid.alphabet_size)
    rows = [
        ("width", grid.width),
        ("height", grid.height),
        ("alphabet_size", grid.alphabet_size),
        ("H", h),
        ("Hmax", hmax),
        ("R", redundancy(dist) if grid.alphabet_size >= 2 else ""),
    ]
    for bw, bh in blocks:
        rows.append((f"block_entropy_{bw}x{bh}", block_entropy(grid, bw, bh)))
    out = ["metric,value"]
    out += [f"{k},{v!r}" if isinstance(v, float) else f"{k},{v}" for k, v in rows]
    return "\n".join(out) + "\n"


def _default_blocks(grid):
    return [(b, b) for b in (1, 2, 4, 8) if grid.width % b == 0 and grid.height % b == 0]


def render_measure(p, seed, inputs):
    grid = _grid_from_input(inputs["input"], p["format"], p["k"])
    blocks = [tuple(b) for b in p["blocks"]] if p["blocks"] else _default_blocks(grid)
    return {"main": measure_report(grid, blocks).encode("utf-8")}, {}


def render_wave_synth(p, seed, inputs):
    spec = load_spectrum(inputs["spectrum"].decode("utf-8"))
    wf = synthesize_from_spectrum(
        spec, seed, p["nx"], p["ny"], p["dx"], p["dy"], p["t"], (p["x0"], p["y0"]), p["g"]
    )
    outs = {"main": field_to_csv(wf).encode("ascii")}
    extra = {"n_components": len(wf.components)}
    if p.get("pgm"):
        gray, vmin, vmax = field_to_gray(wf)
        outs["pgm"] = write_pgm(gray, 255, comments=[f"height_min_m={vmin!r}", f"height_max_m={vmax!r}"])
        extra.update(height_min_m=vmin, height_max_m=vmax)
    return outs, extra


def render_wave_heatmap(p, seed, inputs):
    spec = load_spectrum(inputs["spectrum"].decode("utf-8"))
    gray = spectrum_heatmap(spec)
    vmax = float(spec.values.max())
    comments = ["rows: frequency ascending; columns: direction ascending", f"s_max_m2_per_hz_rad={vmax!r}"]
    return {"main": write_pgm(gray, 255, comments)}, {"s_max_m2_per_hz_rad": vmax}


RENDERERS = {
    "nees-ncorner": render_ncorner,
    "nees-grid": render_grid,
    "density": render_density,
    "hommage": render_hommage,
    "lutz": render_lutz,
    "measure": render_measure,
    "wave-synth": render_wave_synth,
    "wave-heatmap": render_wave_heatmap,
}


# ---------------------------------------------------------------------------
# argument parsing


def _seed(text: str) -> int:
    try:
        v = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if not 0 <= v <= MASK64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return v


def _floats(n):
    def parse(text):
        try:
            vals = [float(t) for t in text.split(",")]
        except ValueError:
            raise argparse.ArgumentTypeError(f"expected {n} comma-separated numbers: {text!r}") from None
        if len(vals) != n:
            raise argparse.ArgumentTypeError(f"expected {n} comma-separated numbers: {text!r}")
        return vals

    return parse


def _int_pair(text):
    sep = "x" if "x" in text else ","
    try:
        a, b = (int(t) for t in text.split(sep))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected two integers like 2x2 or 3,5: {text!r}") from None
    return [a, b]


def _states(text):
    out = []
    for part in text.split(","):
        name, _, val = part.partition("=")
        name = name.strip()
        if name not in CELL_STATES:
            raise argparse.ArgumentTypeError(f"unknown cell state {name!r}; allowed: {', '.join(CELL_STATES)}")
        try:
            out.append([name, float(val)])
        except ValueError:
            raise argparse.ArgumentTypeError(f"bad weight in {part!r}") from None
    return out


def _orientations(text):
    vals = [t.strip() for t in text.split(",") if t.strip()]
    bad = [v for v in vals if v not in ORIENTATIONS]
    if bad:
        raise argparse.ArgumentTypeError(f"unknown orientation(s) {bad}; allowed: {', '.join(ORIENTATIONS)}")
    return vals


def _add_common(p, output_required=True):
    p.add_argument("--seed", type=_seed, default=None, help=f"64-bit seed (default: ${SEED_ENV} or 0)")
    p.add_argument("-o", "--output", required=output_required, help="output file")
    p.add_argument("--manifest", help="manifest path (default: <output>.manifest.json)")


def _add_scene_opts(p):
    p.add_argument("--stroke-width", type=float, default=0.5)
    p.add_argument("--crop", type=_floats(4), default=None, metavar="X0,Y0,X1,Y1",
                   help="editorial crop rectangle in page units")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gaw", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"gaw {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="stochastic graphics and text").add_subparsers(dest="rule", required=True)

    p = gen.add_parser("nees-ncorner", help="one closed polygon with n random vertices")
    p.add_argument("--n", type=int, default=8)
    p.add_argument("--width", type=float, default=100.0)
    p.add_argument("--height", type=float, default=100.0)
    p.add_argument("--margin", type=float, default=10.0)
    _add_scene_opts(p)
    _add_common(p)

    p = gen.add_parser("nees-grid", help="grid of independently drawn motifs")
    p.add_argument("--rows", type=int, default=10)
    p.add_argument("--cols", type=int, default=10)
    p.add_argument("--motif", default="ncorner", help="ncorner or segment")
    p.add_argument("--n", type=int, default=23, help="corners per ncorner motif")
    p.add_argument("--cell-size", type=float, default=10.0)
    p.add_argument("--margin", type=float, default=1.0)
    _add_scene_opts(p)
    _add_common(p)

    p = gen.add_parser("density", help="segments placed by rejection against a density map")
    p.add_argument("--count", type=int, default=2000)
    p.add_argument("--orientations", type=_orientations, default=list(ORIENTATIONS))
    p.add_argument("--density", default="ramp-x", help="constant, ramp-x, ramp-y, radial or band")
    p.add_argument("--length", type=float, default=None)
    p.add_argument("--width", type=float, default=200.0)
    p.add_argument("--height", type=float, default=200.0)
    p.add_argument("--margin", type=float, default=10.0)
    _add_scene_opts(p)
    _add_common(p)

    p = gen.add_parser("hommage", help="jittered mesh with per-cell hatching states")
    p.add_argument("--rows", type=int, default=10)
    p.add_argument("--cols", type=int, default=10)
    p.add_argument("--jitter", type=float, default=0.2)
    p.add_argument("--states", type=_states,
                   default=[["h-hatch", 0.3], ["v-hatch", 0.3], ["empty", 0.2], ["diagonal", 0.2]],
                   help="weights, e.g. h-hatch=0.3,v-hatch=0.3,empty=0.2,diagonal=0.2")
    p.add_argument("--hatch", type=_int_pair, default=[2, 8], metavar="MIN,MAX")
    p.add_argument("--cell-size", type=float, default=10.0)
    _add_scene_opts(p)
    _add_common(p)

    p = gen.add_parser("lutz", help="stochastic sentences from a lexicon and templates")
    p.add_argument("--lexicon", help="sectioned word list (default: built-in illustrative list)")
    p.add_argument("--templates", help="template file (default: built-in)")
    p.add_argument("--n", type=int, default=8)
    _add_common(p, output_required=False)

    p = sub.add_parser("measure", help="entropy report for a PGM raster or CSV symbol grid")
    p.add_argument("--input", required=True)
    p.add_argument("--k", type=int, default=None, help="gray bins for PGM (default 8) or CSV alphabet size")
    p.add_argument("--block", type=_int_pair, action="append", default=None, metavar="WxH")
    _add_common(p, output_required=False)

    wave = sub.add_parser("wave", help="random-phase wave fields").add_subparsers(dest="rule", required=True)
    p = wave.add_parser("synth", help="synthesize a height grid")
    p.add_argument("--spectrum", required=True)
    p.add_argument("--nx", type=int, default=256)
    p.add_argument("--ny", type=int, default=256)
    p.add_argument("--dx", type=float, default=2.0)
    p.add_argument("--dy", type=float, default=2.0)
    p.add_argument("--t", type=float, default=0.0)
    p.add_argument("--x0", type=float, default=0.0)
    p.add_argument("--y0", type=float, default=0.0)
    p.add_argument("--g", type=float, default=9.81)
    p.add_argument("--pgm", help="also write a normalized P2 graymap")
    _add_common(p)
    p = wave.add_parser("hs", help="print significant wave height 4*sqrt(m0)")
    p.add_argument("--spectrum", required=True)
    p = wave.add_parser("heatmap", help="P2 graymap of S over frequency x direction")
    p.add_argument("--spectrum", required=True)
    _add_common(p)

    p = sub.add_parser("replay", help="regenerate outputs from a manifest")
    p.add_argument("manifest")
    p.add_argument("--outdir", help="write here instead of the recorded locations")
    return parser


def resolve_seed(seed) -> int:
    if seed is not None:
        return seed
    env = os.environ.get(SEED_ENV)
    if env:
        try:
            return _seed(env)
        except argparse.ArgumentTypeError as exc:
            raise UsageError(f"{SEED_ENV}: {exc}") from None
    return 0


def _read(path: str) -> bytes:
    try:
        return Path(path).read_bytes()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _scene_params(args):
    return [("stroke_width", args.stroke_width), ("crop", args.crop)]


def _plan(args):
    """Map parsed args to (rule_id, params, inputs, {role: path})."""
    cmd, rule = args.command, getattr(args, "rule", None)
    paths = {"main": args.output}
    inputs = {}
    if cmd == "gen" and rule == "nees-ncorner":
        params = [("n", args.n), ("width", args.width), ("height", args.height), ("margin", args.margin)] + _scene_params(args)
    elif cmd == "gen" and rule == "nees-grid":
        params = [("rows", args.rows), ("cols", args.cols), ("motif", args.motif), ("n", args.n),
                  ("cell_size", args.cell_size), ("margin", args.margin)] + _scene_params(args)
    elif cmd == "gen" and rule == "density":
        params = [("count", args.count), ("orientations", args.orientations), ("density", args.density),
                  ("length", args.length), ("width", args.width), ("height", args.height),
                  ("margin", args.margin)] + _scene_params(args)
    elif cmd == "gen" and rule == "hommage":
        params = [("rows", args.rows), ("cols", args.cols), ("jitter", args.jitter), ("states", args.states),
                  ("hatch", args.hatch), ("cell_size", args.cell_size)] + _scene_params(args)
    elif cmd == "gen" and rule == "lutz":
        params = [("n", args.n)]
        lex = _read(args.lexicon) if args.lexicon else default_lexicon_text().encode("utf-8")
        tpl = _read(args.templates) if args.templates else default_templates_text().encode("utf-8")
        inputs = {"lexicon": (args.lexicon or "<builtin>", lex), "templates": (args.templates or "<builtin>", tpl)}
    elif cmd == "measure":
        data = _read(args.input)
        fmt = "pgm" if data[:2] in (b"P2", b"P5") else "csv"
        params = [("format", fmt), ("k", args.k), ("blocks", args.block or [])]
        inputs = {"input": (args.input, data)}
    elif cmd == "wave" and rule == "synth":
        params = [("nx", args.nx), ("ny", args.ny), ("dx", args.dx), ("dy", args.dy), ("t", args.t),
                  ("x0", args.x0), ("y0", args.y0), ("g", args.g), ("pgm", bool(args.pgm))]
        inputs = {"spectrum": (args.spectrum, _read(args.spectrum))}
        if args.pgm:
            paths["pgm"] = args.pgm
    elif cmd == "wave" and rule == "heatmap":
        params = []
        inputs = {"spectrum": (args.spectrum, _read(args.spectrum))}
    else:
        raise UsageError(f"unknown command {cmd} {rule or ''}".strip())
    rule_id = rule if cmd == "gen" else cmd if rule is None else f"{cmd}-{rule}"
    return rule_id, params, inputs, paths


def _write(path: Path, data: bytes) -> None:
    if path.parent and not path.parent.exists():
        path.parent.mkdir(parents=True)
    path.write_bytes(data)


def run_generation(args, out=None) -> int:
    out = out or sys.stdout
    rule_id, params, inputs, paths = _plan(args)
    seed = resolve_seed(args.seed)
    manifest = GenerationManifest(rule_id, seed, [list(kv) for kv in params])
    for name, (filename, data) in inputs.items():
        manifest.add_input(name, filename, data)
    outputs, extra = RENDERERS[rule_id](manifest.param_dict(), seed, {n: d for n, (_, d) in inputs.items()})
    if paths["main"] is None:
        # stdout mode: nothing on disk, so no manifest
        out.write(outputs["main"].decode("utf-8"))
        return 0
    mpath = Path(args.manifest) if args.manifest else Path(paths["main"] + ".manifest.json")
    mdir = mpath.parent.resolve()
    for role, data in outputs.items():
        p = Path(paths[role])
        _write(p, data)
        manifest.outputs.append(
            {"role": role, "path": os.path.relpath(p.resolve(), mdir), "sha256": sha256_hex(data)}
        )
    manifest.extra = extra
    _write(mpath, manifest.to_json().encode("utf-8"))
    return 0


def run_hs(args, out=None) -> int:
    out = out or sys.stdout
    spec = load_spectrum(_read(args.spectrum).decode("utf-8"))
    out.write(f"{significant_wave_height(spec):.10g}\n")
    return 0


def replay(manifest_path: str, outdir: str | None = None, out=None, err=None) -> int:
    """Re-render every output of a manifest; returns 0 only if all checksums match."""
    out, err = out or sys.stdout, err or sys.stderr
    mpath = Path(manifest_path)
    manifest = GenerationManifest.from_json(_read(manifest_path).decode("utf-8"))
    manifest.check_version()
    if manifest.rule_id not in RENDERERS:
        raise ManifestError(f"unknown rule {manifest.rule_id!r}")
    inputs = {name: manifest.input_bytes(name) for name in manifest.inputs}
    outputs, _ = RENDERERS[manifest.rule_id](manifest.param_dict(), manifest.seed, inputs)
    base = Path(outdir) if outdir else mpath.parent
    status = 0
    for entry in manifest.outputs:
        data = outputs.get(entry["role"])
        if data is None:
            raise ManifestError(f"rule {manifest.rule_id!r} produced no {entry['role']!r} output")
        target = base / (Path(entry["path"]).name if outdir else entry["path"])
        _write(target, data)
        digest = sha256_hex(data)
        if digest == entry["sha256"]:
            out.write(f"ok {target} {digest}\n")
        else:
            err.write(f"gaw: warning: checksum mismatch for {target}: manifest {entry['sha256']}, got {digest}\n")
            status = 1
    return status


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "replay":
            return replay(args.manifest, args.outdir)
        if args.command == "wave" and args.rule == "hs":
            return run_hs(args)
        return run_generation(args)
    except VersionMismatchError as exc:
        print(f"gaw: error: {exc}", file=sys.stderr)
        return 3
    except (ValueError, KeyError, OSError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"gaw: error: {msg}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
