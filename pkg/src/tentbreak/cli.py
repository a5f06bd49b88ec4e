"""Command-line interface: ``tentbreak <command> ...``.

Exit codes: 0 success, 1 any failure (including an attack that ran but
could not verify its result), 2 NoConsistentKey, 3 SearchBudgetExceeded.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import image_io
from .attacks import (
    LocalOracle,
    RecoveryConfig,
    cpa_attack,
    kpa_attack,
    kpa_recover_keystream,
    matching_prefix,
    recover_key_from_keystream,
    xor_attack,
)
from .cipher import encrypt
from .errors import NoConsistentKey, SearchBudgetExceeded, TentBreakError
from .keyfile import dumps_effective_key, generate_key, read_key, write_key
from .stats import analyze
from .testimage import builtin_image

EXIT_OK, EXIT_FAIL, EXIT_NO_KEY, EXIT_BUDGET = 0, 1, 2, 3

# thresholds the demo uses to call the statistics "passed"
STATS_MIN_ENTROPY = 7.9
STATS_MAX_ABS_CORR = 0.05


def _format(path, fmt):
    if fmt != "auto":
        return fmt
    return "pgm" if str(path).lower().endswith(".pgm") else "raw"


def _load(path, fmt):
    """Returns ``(bytes, image_or_None)``."""
    if _format(path, fmt) == "pgm":
        img = image_io.read_pgm(path)
        return img.pixels, img
    return image_io.read_raw(path), None


def _save(path, data, like):
    if like is not None:
        image_io.write_pgm(like.with_pixels(data), path)
    else:
        image_io.write_raw(path, data)


def _emit(report, path=None):
    text = report.to_json()
    if path:
        Path(path).write_text(text + "\n")
    print(text)


def cmd_keygen(args):
    key = generate_key(args.seed, (args.mu_min, args.mu_max))
    write_key(key, args.out)
    return EXIT_OK


def _crypt(args):
    key = read_key(args.key)
    data, img = _load(args.input, args.format)
    _save(args.output, encrypt(data, key), img)
    return EXIT_OK


def cmd_analyze(args):
    data, img = _load(args.input, args.format)
    if img is None:
        img = image_io.ImageBuffer(data.size, 1, data)
    other = None
    if args.other:
        odata, oimg = _load(args.other, args.format)
        other = oimg if oimg is not None else image_io.ImageBuffer(odata.size, 1, odata)
    print(analyze(img, other).to_json())
    return EXIT_OK


def _optional(path, fmt):
    return None if path is None else _load(path, fmt)[0]


def cmd_attack_cpa(args):
    oracle = LocalOracle(read_key(args.key))
    victim, img = _load(args.victim, args.format)
    recovered, report = cpa_attack(oracle, victim, _optional(args.plain, args.format))
    _save(args.out, recovered, img)
    _emit(report, args.report)
    return EXIT_OK if report.success else EXIT_FAIL


def cmd_attack_kpa(args):
    kp, _ = _load(args.known_plain, args.format)
    kc, _ = _load(args.known_cipher, args.format)
    victim, img = _load(args.victim, args.format)
    recovered, report = kpa_attack(kp, kc, victim, _optional(args.plain, args.format))
    _save(args.out, recovered, img)
    _emit(report, args.report)
    return EXIT_OK if report.success else EXIT_FAIL


def cmd_attack_xor(args):
    c1, img = _load(args.c1, args.format)
    c2, _ = _load(args.c2, args.format)
    leak, report = xor_attack(
        c1, c2, _optional(args.plain1, args.format), _optional(args.plain2, args.format)
    )
    _save(args.out, leak, img)
    _emit(report, args.report)
    return EXIT_OK if report.success else EXIT_FAIL


def cmd_attack_keyrec(args):
    if args.keystream:
        ks = image_io.read_raw(args.keystream)
    elif args.cipher and args.plain:
        ks = kpa_recover_keystream(_load(args.plain, args.format)[0],
                                   _load(args.cipher, args.format)[0])
    else:
        raise TentBreakError("keyrec needs --keystream, or --cipher with --plain")
    if args.samples:
        ks = ks[: args.samples]
    cfg = RecoveryConfig(tolerance=args.tolerance, max_boxes=args.max_boxes)
    cand, report = recover_key_from_keystream(ks, cfg)
    if args.out_key:
        Path(args.out_key).write_text(dumps_effective_key(*cand.center))
    _emit(report, args.report)
    return EXIT_OK if report.success else EXIT_FAIL


def run_demo(out_dir, seed=2016):
    """Encrypt the built-in pictures, show the statistics pass, then break the cipher.

    Writes every artifact under ``out_dir`` and returns the summary text.
    Output is a pure function of ``seed``.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    key = generate_key(seed, (1.9999, 1.99999))
    write_key(key, out / "key.txt")

    img1, img2 = builtin_image(0), builtin_image(1)
    c1 = img1.with_pixels(encrypt(img1.pixels, key))
    c2 = img2.with_pixels(encrypt(img2.pixels, key))
    for name, im in [("plain1", img1), ("plain2", img2), ("cipher1", c1), ("cipher2", c2)]:
        image_io.write_pgm(im, out / f"{name}.pgm")

    stats = analyze(c1, c2)
    (out / "stats_cipher1.json").write_text(stats.to_json() + "\n")
    stats_ok = stats.entropy_bits >= STATS_MIN_ENTROPY and all(
        r is not None and abs(r) <= STATS_MAX_ABS_CORR for r in stats.correlations.values()
    )

    oracle = LocalOracle(key)
    rec_cpa, rep_cpa = cpa_attack(oracle, c1.pixels, img1.pixels)
    image_io.write_pgm(c1.with_pixels(rec_cpa), out / "recovered_cpa.pgm")
    rec_kpa, rep_kpa = kpa_attack(img2.pixels, c2.pixels, c1.pixels, img1.pixels)
    image_io.write_pgm(c1.with_pixels(rec_kpa), out / "recovered_kpa.pgm")
    leak, rep_xor = xor_attack(c1.pixels, c2.pixels, img1.pixels, img2.pixels)
    image_io.write_pgm(c1.with_pixels(leak), out / "cipher_xor.pgm")
    leak_entropy = analyze(c1.with_pixels(leak)).entropy_bits

    ks = rec_cpa ^ c1.pixels  # the keystream the CPA query disclosed
    cand, rep_key = recover_key_from_keystream(ks[:128])
    (out / "effective_key.txt").write_text(dumps_effective_key(*cand.center))
    mu_hat, x1_hat = cand.center
    ahead = matching_prefix(mu_hat, x1_hat, ks[:136])
    rep_key.details["true_mu"] = key.mu
    rep_key.details["prefix_of_136"] = ahead

    for name, rep in [("cpa", rep_cpa), ("kpa", rep_kpa), ("xor", rep_xor), ("keyrec", rep_key)]:
        (out / f"report_{name}.json").write_text(rep.to_json() + "\n")

    broken = bool(rep_cpa.plaintext_recovered and rep_kpa.plaintext_recovered
                  and rep_xor.plaintext_recovered)
    corr = ", ".join(f"{k} {v:+.4f}" for k, v in stats.correlations.items())
    lines = [
        "Tent-map XOR cipher: statistics versus attacks",
        "",
        f"key: mu={key.mu!r} x0={key.x0!r}",
        "",
        "Ciphertext statistics (cipher1.pgm):",
        f"  entropy      {stats.entropy_bits:.4f} bits (threshold >= {STATS_MIN_ENTROPY})",
        f"  correlation  {corr} (threshold |r| <= {STATS_MAX_ABS_CORR})",
        f"  NPCR/UACI vs cipher2  {stats.npcr_percent:.2f}% / {stats.uaci_percent:.2f}%",
        f"  statistics passed: {'YES' if stats_ok else 'NO'}",
        "",
        "Attacks:",
        f"  chosen plaintext: {rep_cpa.queries_used} query, plaintext recovered exactly: "
        f"{'YES' if rep_cpa.plaintext_recovered else 'NO'}",
        f"  known plaintext (plain2/cipher2 decrypts cipher1): "
        f"{'YES' if rep_kpa.plaintext_recovered else 'NO'}",
        f"  two ciphertexts, one key: cipher1^cipher2 == plain1^plain2: "
        f"{'YES' if rep_xor.plaintext_recovered else 'NO'}"
        f" (entropy of the XOR image {leak_entropy:.3f} bits)",
        f"  key recovery from 128 keystream bytes: mu estimate {mu_hat!r}"
        f" (error {abs(mu_hat - key.mu):.2e}),",
        f"    regenerates {rep_key.verified_match_len} of 128 bytes,"
        f" full reproduction: {'YES' if rep_key.success else 'NO'}",
        "",
        f"Statistics passed AND plaintext recovered exactly: "
        f"{'YES' if (stats_ok and broken) else 'NO'}",
    ]
    summary = "\n".join(lines) + "\n"
    (out / "summary.txt").write_text(summary)
    return summary, stats_ok and broken


def cmd_demo(args):
    summary, ok = run_demo(args.output_dir, args.seed)
    print(summary, end="")
    return EXIT_OK if ok else EXIT_FAIL


def build_parser():
    p = argparse.ArgumentParser(prog="tentbreak", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("keygen", help="write a random key file")
    g.add_argument("--out", required=True)
    g.add_argument("--seed", type=int)
    g.add_argument("--mu-min", type=float, default=1.0)
    g.add_argument("--mu-max", type=float, default=2.0)
    g.set_defaults(func=cmd_keygen)

    for name in ("encrypt", "decrypt"):
        c = sub.add_parser(name, help=f"{name} a PGM or raw file")
        c.add_argument("input")
        c.add_argument("key")
        c.add_argument("output")
        c.add_argument("--format", choices=("auto", "pgm", "raw"), default="auto")
        c.set_defaults(func=_crypt)

    a = sub.add_parser("analyze", help="statistics report as JSON")
    a.add_argument("input")
    a.add_argument("--other", help="second image for NPCR/UACI")
    a.add_argument("--format", choices=("auto", "pgm", "raw"), default="auto")
    a.set_defaults(func=cmd_analyze)

    at = sub.add_parser("attack", help="run an attack")
    asub = at.add_subparsers(dest="mode", required=True)

    def common(sp):
        sp.add_argument("--format", choices=("auto", "pgm", "raw"), default="auto")
        sp.add_argument("--report", help="also write the JSON report here")

    cpa = asub.add_parser("cpa", help="chosen plaintext against a local oracle")
    cpa.add_argument("--key", required=True, help="key file the simulated oracle hides")
    cpa.add_argument("--victim", required=True)
    cpa.add_argument("--out", required=True)
    cpa.add_argument("--plain", help="true plaintext, to verify recovery")
    common(cpa)
    cpa.set_defaults(func=cmd_attack_cpa)

    kpa = asub.add_parser("kpa", help="known plaintext/ciphertext pair")
    kpa.add_argument("--known-plain", required=True)
    kpa.add_argument("--known-cipher", required=True)
    kpa.add_argument("--victim", required=True)
    kpa.add_argument("--out", required=True)
    kpa.add_argument("--plain", help="true plaintext, to verify recovery")
    common(kpa)
    kpa.set_defaults(func=cmd_attack_kpa)

    x = asub.add_parser("xor", help="XOR two ciphertexts made under one key")
    x.add_argument("c1")
    x.add_argument("c2")
    x.add_argument("--out", required=True)
    x.add_argument("--plain1")
    x.add_argument("--plain2")
    common(x)
    x.set_defaults(func=cmd_attack_xor)

    k = asub.add_parser("keyrec", help="recover (mu, x1) from keystream bytes")
    k.add_argument("--keystream", help="raw keystream file")
    k.add_argument("--cipher")
    k.add_argument("--plain")
    k.add_argument("--samples", type=int, default=128)
    k.add_argument("--tolerance", type=float, default=2.0**-40)
    k.add_argument("--max-boxes", type=int, default=10**7)
    k.add_argument("--out-key", help="write the effective key (mu, x1) here")
    common(k)
    k.set_defaults(func=cmd_attack_keyrec)

    d = sub.add_parser("demo", help="end-to-end break of the built-in images")
    d.add_argument("output_dir")
    d.add_argument("--seed", type=int, default=2016)
    d.set_defaults(func=cmd_demo)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except NoConsistentKey as exc:
        print(f"tentbreak: no consistent key: {exc}", file=sys.stderr)
        return EXIT_NO_KEY
    except SearchBudgetExceeded as exc:
        print(f"tentbreak: search budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (TentBreakError, OSError, ValueError) as exc:
        print(f"tentbreak: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
