"""Reference orbit tables, used as expected values by the CLI and the tests.

Keys are ``(preset, h^2, phi)``; rows are ``(singularities, number of orbits, r)``
with singularities written as in ``AdeType`` (``"2A1"``, ``"E7A1"``, ``"∅"``).
"""

from __future__ import annotations

_E = "∅"

ORBIT_TABLES: dict[tuple[str, int, int], list[tuple[str, int, int]]] = {
    ("A1", 2, 1): [(_E, 16320, 2), ("A1", 16456, 1), ("A1", 9180, 2)],
    ("A1", 4, 2): [(_E, 130560, 2), ("A1", 73440, 1), ("A1", 85680, 2)],
    ("A1", 6, 2): [(_E, 652800, 2), ("A1", 364480, 1), ("A1", 514080, 2)],
    ("A1", 8, 2): [(_E, 2350080, 2), ("A1", 1028160, 1), ("A1", 1689120, 2)],
    ("A1", 10, 3): [(_E, 3133440, 2), ("A1", 1175040, 1), ("A1", 2754816, 2)],
    ("E8", 2, 1): [
        ("D8", 2, 135), ("D8", 1, 8640), ("D8", 1, 9450),
        ("E7A1", 2, 120), ("E7A1", 1, 3360), ("E7A1", 3, 4320), ("E7A1", 2, 7560), ("E7A1", 2, 8640),
        ("E8", 1, 1), ("E8", 1, 135),
    ],
    ("E8", 4, 2): [
        ("D8", 1, 1080), ("D8", 2, 7560), ("D8", 2, 8640), ("D8", 1, 37800), ("D8", 1, 75600),
        ("D8", 2, 120960),
        ("E7A1", 1, 34560), ("E7A1", 1, 80640),
        ("E8", 2, 960),
    ],
    ("E8", 6, 2): [
        ("D8", 1, 8640), ("D8", 1, 30240), ("D8", 2, 120960), ("D8", 1, 151200), ("D8", 1, 302400),
        ("E7A1", 1, 120), ("E7A1", 2, 3360), ("E7A1", 2, 4320), ("E7A1", 3, 7560), ("E7A1", 3, 40320),
        ("E7A1", 2, 90720), ("E7A1", 5, 120960), ("E7A1", 2, 151200), ("E7A1", 1, 226800),
        ("E7A1", 2, 241920),
        ("E8", 1, 1120), ("E8", 1, 4320),
    ],
    ("E8", 8, 2): [
        ("D8", 2, 1080), ("D8", 2, 7560), ("D8", 6, 8640), ("D8", 4, 69120), ("D8", 4, 75600),
        ("D8", 2, 241920), ("D8", 2, 302400), ("D8", 2, 453600), ("D8", 4, 483840), ("D8", 4, 604800),
        ("E7A1", 1, 15120), ("E7A1", 2, 45360), ("E7A1", 2, 69120), ("E7A1", 1, 151200),
        ("E7A1", 1, 226800), ("E7A1", 2, 241920), ("E7A1", 2, 483840),
        ("E8", 2, 1080), ("E8", 2, 7560), ("E8", 2, 8640),
    ],
    ("E8", 10, 3): [
        ("D8", 2, 8640), ("D8", 4, 120960), ("D8", 1, 604800), ("D8", 1, 2419200),
        ("E7A1", 4, 34560), ("E7A1", 1, 69120), ("E7A1", 4, 80640), ("E7A1", 4, 241920),
        ("E7A1", 3, 483840), ("E7A1", 4, 1209600), ("E7A1", 1, 1612800),
        ("E8", 2, 960), ("E8", 1, 24192),
    ],
    ("A2", 2, 1): [("A1", 7752, 3), ("A1", 4284, 6), ("A2", 3808, 1), ("A2", 4896, 3)],
    ("A2", 4, 2): [("A1", 39168, 3), ("A1", 45696, 6), ("A2", 8568, 1), ("A2", 25704, 3), ("A2", 4760, 6)],
    ("A2", 6, 2): [("A1", 172992, 3), ("A1", 239904, 6), ("A2", 45832, 1), ("A2", 145656, 3),
                   ("A2", 42840, 6)],
    ("A2", 8, 2): [("A1", 548352, 3), ("A1", 900864, 6), ("A2", 102816, 1), ("A2", 376992, 3),
                   ("A2", 137088, 6)],
    ("A2", 10, 3): [("A1", 548352, 3), ("A1", 1292544, 6), ("A2", 78336, 1), ("A2", 548352, 3),
                    ("A2", 304640, 6)],
    ("3A1", 2, 1): [
        (_E, 816, 8), ("A1", 3072, 4), ("A1", 1728, 8), ("2A1", 3072, 2), ("2A1", 3072, 4),
        ("2A1", 960, 8), ("3A1", 1056, 1), ("3A1", 1584, 2), ("3A1", 760, 4), ("3A1", 180, 8),
    ],
    ("3A1", 4, 2): [
        (_E, 9600, 8), ("A1", 13824, 4), ("A1", 16128, 8), ("2A1", 9216, 2), ("2A1", 18432, 4),
        ("2A1", 11520, 8), ("3A1", 2208, 1), ("3A1", 6336, 2), ("3A1", 6120, 4), ("3A1", 2640, 8),
    ],
    ("3A1", 6, 2): [
        (_E, 32640, 8), ("A1", 67584, 4), ("A1", 96768, 8), ("2A1", 36864, 2), ("2A1", 98304, 4),
        ("2A1", 72192, 8), ("3A1", 8192, 1), ("3A1", 27648, 2), ("3A1", 37056, 4), ("3A1", 17056, 8),
    ],
    ("3A1", 8, 2): [
        (_E, 172800, 8), ("A1", 193536, 4), ("A1", 317952, 8), ("2A1", 95232, 2), ("2A1", 293376, 4),
        ("2A1", 244224, 8), ("3A1", 14400, 1), ("3A1", 72192, 2), ("3A1", 109008, 4),
        ("3A1", 61728, 8),
    ],
    ("3A1", 10, 3): [
        (_E, 156672, 8), ("A1", 221184, 4), ("A1", 516096, 8), ("2A1", 98304, 2), ("2A1", 344064, 4),
        ("2A1", 430080, 8), ("3A1", 15360, 1), ("3A1", 72192, 2), ("3A1", 134016, 4),
        ("3A1", 121920, 8),
    ],
}

# blocks reproduced by default; the rest need ``--level full``
DESK_BLOCKS = [("A1", 2, 1), ("A1", 4, 2), ("A1", 6, 2), ("A1", 8, 2), ("A1", 10, 3),
               ("A2", 2, 1), ("3A1", 2, 1), ("E8", 2, 1)]
STRETCH_BLOCKS = [k for k in ORBIT_TABLES if k not in DESK_BLOCKS]

# fibration tables: preset -> rows (fiber signature, weight, number of classes)
FIBRATIONS: dict[str, list[tuple[str, int, int]]] = {
    "unnodal": [(_E, 1, 527)],
    "A1": [("A1", 1, 255), (_E, 2, 136)],
    "2A1": [("A1", 2, 128), ("A1 A1", 1, 126), ("A1*", 1, 1), (_E, 4, 36)],
}
