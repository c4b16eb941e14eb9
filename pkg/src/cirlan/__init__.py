"""cirlan - simulation, likelihood and LAN verification for the CIR diffusion."""

__version__ = "0.1.0"
