"""Standard vs Heisenberg scaling in a two-port interferometer.

With all N particles in one port the phase variance scales as 1/N; splitting
them evenly across both ports improves the zero-phase Fisher information to
2 j(j+1) ~ N^2/2.
"""

import math

from fisherlab import (FockInput, fisher_phase_at_zero,
                       linearized_phase_error, moments, mz_transform_check)


def main():
    print("Consistency of the rotation picture (deviation of the composed")
    print("beamsplitter/phase product from exp(-i phi J2)):")
    for j in (0.5, 5.0, 50.0):
        print(f"  j = {j:5.1f}: {mz_transform_check(j, 1.234):.2e}")

    print("\nPhase information at the phi = 0 working point:")
    print(f"{'N':>6} {'one-port F0':>12} {'(dphi)^2':>10} "
          f"{'balanced F0':>12} {'(dphi)^2':>10}")
    for n in (2, 10, 100, 1000):
        standard = fisher_phase_at_zero(FockInput(n1=n, n2=0))
        quantum = fisher_phase_at_zero(FockInput(n1=n // 2, n2=n // 2))
        print(f"{n:>6} {standard:>12.1f} {1 / standard:>10.2e} "
              f"{quantum:>12.1f} {1 / quantum:>10.2e}")
    print("one-port: (dphi)^2 = 1/N; balanced: 2/N^2 (1 + 2/N)^-1")

    print("\nLinearized readout error (phi-independent):")
    src = FockInput(n1=100, n2=0)
    print(f"  N=100 one port: delta phi = {linearized_phase_error(src, 0.3):.4f}"
          f"  (1/sqrt(N) = {1 / math.sqrt(100):.4f})")
    balanced = FockInput(n1=50, n2=50)
    print(f"  N=100 balanced: {linearized_phase_error(balanced, 0.3)}"
          "  (0/0 -- linearization fails, Bayes/Fisher analysis required)")

    print("\nMean and variance of the readout J3 vs phase (N=6, one port):")
    src = FockInput(n1=6, n2=0)
    for phi in (0.0, 0.5, 1.0, 1.5):
        mean, mean_sq = moments(src, phi)
        print(f"  phi = {phi:3.1f}: <J3> = {mean:7.4f},"
              f" var = {mean_sq - mean ** 2:7.4f}")


if __name__ == "__main__":
    main()
