"""Reference numbers quoted for the hollow-core waveguide proposal, keyed by quantity.

Each entry is (value, unit, relative tolerance used when comparing against it).
"""

paper_values = {
    "rho_bar": (2e11, "cm^-3", 0.05),
    "kappa1_L": (600.0, "", 0.03),
    "kappa2_L": (580.0, "", 0.03),
    "v1": (100.0, "m/s", 0.02),
    "v2": (100.0, "m/s", 0.02),
    "delta_omega1": (1.2e5, "rad/s", 0.05),
    "delta_omega2": (1.2e5, "rad/s", 0.05),
    "phi12_gate": (3.141592653589793, "rad", 0.05),
    "phi12_qnd": (0.7, "rad", 0.05),
    "qnd_feasible": (1.0, "", 0.0),
    "probe_self_interaction_margin": (1.125, "", 0.01),
}

# order of the reproduce-paper table
REPRODUCED = tuple(paper_values)
