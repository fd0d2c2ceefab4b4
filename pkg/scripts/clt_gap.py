#!/usr/bin/env python3
"""Quantify the gap between the asymptotic closed form and the exact chain.

The quadratic-in-beta closed form for the integrated receiver treats the
frame's chip sum V = x_1 + ... + x_beta as Gaussian, i.e. E[V^4] = 3 (beta/2)^2.
That is only the leading term.  For the degree-2 Chebyshev orbit the exact
fourth moment works out to

    E[V^4] = (3/4) beta^2 - (3/8) beta + (3/2) max(beta - 2, 0)

(independent chips drop the last term), so the harvested-DC prediction

    z = rho1 g beta + 16 rho2 g^2 E[V^4]

carries O(beta) corrections that the asymptotic branch discards.  This script
prints the noise-free relative gap per beta, the first beta where it falls
under 5%, and (optionally) a Monte-Carlo spot check that lands on the exact
prediction rather than the asymptotic one.
"""

import argparse
import sys

from chaoswpt.harvester import EhCircuit, rho_params
from chaoswpt.channel import path_gain
from chaoswpt.montecarlo import RunConfig, run_once


def exact_v4_orbit(beta: int) -> float:
    """E[(sum of beta degree-2 orbit chips)^4] under the stationary density."""
    return 0.75 * beta**2 - 0.375 * beta + 1.5 * max(beta - 2, 0)


def exact_v4_iid(beta: int) -> float:
    """Same moment for independent chips from the stationary density."""
    return 0.75 * beta**2 - 0.375 * beta


def z_from_v4(beta: int, v4: float, ell: float, q0: float) -> float:
    # ell = rho1 * g, q0 = rho2 * g^2; E[h^4] = 2 and E[(1+d)^4] = 8 give 16
    return ell * beta + 16.0 * q0 * v4


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--r", type=float, default=20.0)
    ap.add_argument("--alpha", type=float, default=4.0)
    ap.add_argument("--betas", type=int, nargs="+",
                    default=[1, 2, 3, 5, 10, 20, 25, 50, 100])
    ap.add_argument("--mc-frames", type=int, default=0,
                    help="also run a Monte-Carlo spot check with this many "
                         "frames per beta (0 = skip)")
    ap.add_argument("--seed", type=int, default=42)
    args = ap.parse_args()

    circuit = EhCircuit()
    rho1, rho2 = rho_params(circuit)
    g = path_gain(args.r, args.alpha)
    ell, q0 = rho1 * g, rho2 * g * g

    print(f"r={args.r:g}  alpha={args.alpha:g}  rho1*g={ell:.6e}  "
          f"rho2*g^2={q0:.6e}")
    print(f"{'beta':>5} {'z_asymptotic':>14} {'z_exact_orbit':>14} "
          f"{'gap_orbit':>10} {'gap_iid':>10}"
          + ("  mc_rel_dev  mc_sigma" if args.mc_frames else ""))

    violations = []
    for beta in args.betas:
        z_asym = z_from_v4(beta, 0.75 * beta**2, ell, q0)
        z_orbit = z_from_v4(beta, exact_v4_orbit(beta), ell, q0)
        z_iid = z_from_v4(beta, exact_v4_iid(beta), ell, q0)
        gap_orbit = (z_orbit - z_asym) / z_asym
        gap_iid = (z_iid - z_asym) / z_asym
        line = (f"{beta:>5} {z_asym:>14.6e} {z_orbit:>14.6e} "
                f"{100 * gap_orbit:>+9.2f}% {100 * gap_iid:>+9.2f}%")
        if args.mc_frames:
            res = run_once(RunConfig(beta=beta, r=args.r, alpha=args.alpha,
                                     psi_mode="full", n_frames=args.mc_frames,
                                     seed=args.seed))
            # deviation of the measurement from the *exact-orbit* prediction
            sig = (res.estimate.mean - z_orbit) / res.estimate.std_error
            line += f"  {100 * res.rel_dev:>+9.2f}% {sig:>+8.1f}"
        print(line)
        if beta > 1 and abs(gap_orbit) > 0.05:
            violations.append(beta)

    if violations:
        print("\nbetas where the asymptotic branch misses by more than 5%: "
              + ", ".join(str(b) for b in violations))
    else:
        print("\nevery beta > 1 in the grid sits within 5% of the "
              "asymptotic branch")
    print("(beta=1 is listed for scale only; the library always uses the "
          "exact single-symbol constant there.)  The gap is not monotone: "
          "the discarded terms flip sign at beta=3, peak near beta=5, and "
          "fade like O(1/beta) against the quadratic total.")
    return 0


if __name__ == "__main__":
    sys.exit(main())
