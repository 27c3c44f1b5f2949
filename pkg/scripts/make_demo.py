"""Regenerate the bundled demo dataset (synthetic, seed-fixed).

    python scripts/make_demo.py

Three synthetic experts judge the nine failure modes on the SODCT factors.
The output is committed under src/zrisk/data/demo/; rerunning reproduces it
byte for byte.
"""
import csv
from pathlib import Path

import numpy as np

OUT = Path(__file__).resolve().parents[1] / "src" / "zrisk" / "data" / "demo"

CRITERIA = [("S", "Severity"), ("O", "Occurrence"), ("D", "Detection"), ("C", "Cost"), ("T", "Time")]
FAILURE_MODES = [
    ("F1", "mergers, acquisitions, and other competition."),
    ("F2", "market or industry changes."),
    ("F3", "changes among customers or in demand."),
    ("F4", "change management."),
    ("F5", "human resource issues, such as staffing."),
    ("F6", "financial issues with cashflow, capital or cost pressures."),
    ("F7", "IT disasters and equipment failure."),
    ("F8", "Planned system changes"),
    ("F9", "Intermediaries and interfaces of facilities and devices"),
]
EXPERT_ORDERS = {
    "E1": ["S", "C", "D", "T", "O"],
    "E2": ["S", "D", "C", "T", "O"],
    "E3": ["C", "S", "D", "T", "O"],
}
WEIGHTING = ["EI", "MOL", "LI", "VLI", "MUL"]
RELIABILITY = ["VW", "W", "M", "H", "VH"]
RATING = ["VP", "P", "MP", "F", "MG", "G", "VG"]
# latent risk level per failure mode on a 0..1 scale
LATENT = {"F1": 0.45, "F2": 0.85, "F3": 0.75, "F4": 0.5, "F5": 0.4,
          "F6": 0.8, "F7": 0.3, "F8": 0.25, "F9": 0.55}


def write(name, header, rows):
    with open(OUT / name, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)


def main():
    rng = np.random.default_rng(20240917)
    OUT.mkdir(parents=True, exist_ok=True)
    write("criteria.csv", ["id", "name", "direction"], [(c, n, "beneficial") for c, n in CRITERIA])
    write("failure_modes.csv", ["id", "label"], FAILURE_MODES)

    rows = []
    for e, order in EXPERT_ORDERS.items():
        for pos, c in enumerate(order, start=1):
            if pos == 1:
                rows.append((e, c, pos, "", ""))
            else:
                rows.append((e, c, pos, WEIGHTING[rng.integers(1, 4)], RELIABILITY[rng.integers(2, 5)]))
    write("weighting_judgments.csv",
          ["expert_id", "criterion_id", "rank_position", "importance_term", "reliability_term"], rows)

    rows, sodct = [], []
    for e in EXPERT_ORDERS:
        for f, _ in FAILURE_MODES:
            for c, _ in CRITERIA:
                level = np.clip(LATENT[f] + rng.normal(0, 0.15), 0, 0.999)
                rows.append((e, f, c, RATING[int(level * len(RATING))], RELIABILITY[rng.integers(1, 5)]))
                value = int(np.clip(round(1 + 9 * (LATENT[f] + rng.normal(0, 0.12))), 1, 10))
                sodct.append((e, f, c, value))
    write("rating_judgments.csv",
          ["expert_id", "failure_mode_id", "criterion_id", "rating_term", "reliability_term"], rows)
    write("sodct_ratings.csv", ["expert_id", "failure_mode_id", "factor", "value"], sodct)


if __name__ == "__main__":
    main()
