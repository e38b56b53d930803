"""Published coefficient lists, indexed by exponent from q^0 through q^10."""

P2_RANK2 = {
    1: [0, 1, 9, 48, 203, 729, 2346, 6918, 19062, 49620, 123195],
    0: [0, 0, 0, 1, 6, 30, 116, 399, 1233, 3539, 9519],
}

# (f3, f4) on P^1 x P^1 with H = D1 + D2
P1P1_RANK2 = {
    (0, 0): [0, 0, -1, -8, -40, -160, -538, -1596, -4237, -10160, -21825],
    (1, 0): [0, 2, 22, 146, 742, 3174, 11988, 41150, 130834, 390478, 1104724],
    (1, 1): [0, 0, 0, 0, 4, 28, 152, 656, 2504, 8620, 27520],
}

# wall-crossing on P^1 x P^1 at lambda0 = 1/2
WALL_HALF = {
    (0, 0): [0, 0, 0, 0, 4, 32, 176, 768, 2904, 9856, 30816],
    (1, 0): [0, 2, 16, 88, 384, 1452, 4928, 15408, 45056, 124680, 329168],
}

P2_RANK3 = {
    1: [0, 0, 3, 42, 333, 1968, 9609, 40881, 156486, 550392, 1805283],
    0: [0, 0, 0, -1, -9, -60, -309, -1362, -5322, -18957, -62574],
    -1: [0, 0, 3, 42, 333, 1968, 9609, 40881, 156486, 550392, 1805283],
}
