"""Published Z-number -> TFN transformation tables, transcribed at 2 d.p."""

WEIGHTING_TABLE = {
    ("EI", "VW"): (1, 1, 1), ("EI", "W"): (1, 1, 1), ("EI", "M"): (1, 1, 1),
    ("EI", "H"): (1, 1, 1), ("EI", "VH"): (1, 1, 1),
    ("MOL", "VW"): (0.19, 0.29, 0.43), ("MOL", "W"): (0.39, 0.59, 0.89),
    ("MOL", "M"): (0.49, 0.73, 1.10), ("MOL", "H"): (0.56, 0.85, 1.27),
    ("MOL", "VH"): (0.64, 0.96, 1.44),
    ("LI", "VW"): (0.12, 0.14, 0.19), ("LI", "W"): (0.24, 0.30, 0.39),
    ("LI", "M"): (0.29, 0.37, 0.49), ("LI", "H"): (0.34, 0.42, 0.56),
    ("LI", "VH"): (0.38, 0.48, 0.64),
    ("VLI", "VW"): (0.08, 0.10, 0.12), ("VLI", "W"): (0.17, 0.20, 0.24),
    ("VLI", "M"): (0.21, 0.24, 0.29), ("VLI", "H"): (0.24, 0.28, 0.34),
    ("VLI", "VH"): (0.27, 0.32, 0.38),
    ("MUL", "VW"): (0.06, 0.07, 0.08), ("MUL", "W"): (0.13, 0.15, 0.17),
    ("MUL", "M"): (0.16, 0.18, 0.21), ("MUL", "H"): (0.19, 0.21, 0.24),
    ("MUL", "VH"): (0.21, 0.24, 0.27),
}

RATING_TABLE = {
    ("VP", "VW"): (0, 0.29, 0.58), ("VP", "W"): (0, 0.59, 1.18), ("VP", "M"): (0, 0.73, 1.46),
    ("VP", "H"): (0, 0.85, 1.69), ("VP", "VH"): (0, 0.96, 1.91),
    ("P", "VW"): (0.29, 0.58, 0.87), ("P", "W"): (0.59, 1.18, 1.77), ("P", "M"): (0.73, 1.46, 2.19),
    ("P", "H"): (0.85, 1.69, 2.54), ("P", "VH"): (0.96, 1.91, 2.87),
    ("MP", "VW"): (0.58, 1.01, 1.44), ("MP", "W"): (1.18, 2.07, 2.96), ("MP", "M"): (1.46, 2.56, 3.65),
    ("MP", "H"): (1.69, 2.96, 4.23), ("MP", "VH"): (1.91, 3.35, 4.79),
    ("F", "VW"): (1.15, 1.44, 1.73), ("F", "W"): (2.37, 2.96, 3.55), ("F", "M"): (2.92, 3.65, 4.38),
    ("F", "H"): (3.39, 4.23, 5.08), ("F", "VH"): (3.83, 4.79, 5.74),
    ("MG", "VW"): (1.44, 1.88, 2.31), ("MG", "W"): (2.96, 3.85, 4.73), ("MG", "M"): (3.65, 4.75, 5.84),
    ("MG", "H"): (4.23, 5.50, 6.77), ("MG", "VH"): (4.79, 6.22, 7.66),
    ("G", "VW"): (2.02, 2.31, 2.60), ("G", "W"): (4.14, 4.73, 5.32), ("G", "M"): (5.11, 5.84, 6.57),
    ("G", "H"): (5.93, 6.77, 7.62), ("G", "VH"): (6.70, 7.66, 8.62),
    ("VG", "VW"): (2.31, 2.60, 2.89), ("VG", "W"): (4.73, 5.32, 5.92), ("VG", "M"): (5.84, 6.57, 7.30),
    ("VG", "H"): (6.77, 7.62, 8.47), ("VG", "VH"): (7.66, 8.62, 9.57),
}

# rank columns of the published method-comparison table, F1..F9
RPN_RANKS = [6, 2, 3, 5, 7, 1, 8, 9, 4]
FUZZY_WASPAS_RANKS = [6, 2, 3, 5, 4, 1, 9, 8, 7]
Z_WASPAS_RANKS = [6, 2, 3, 4, 9, 1, 8, 7, 5]
