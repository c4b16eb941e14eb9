"""Monte Carlo verification of the local asymptotic limit theorems."""
