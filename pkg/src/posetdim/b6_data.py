"""Bundled five-order comparability scheme for the order-6 Boolean lattice.

Each tuple lists the 64 subset indices of one linear order from least to
greatest (subset S of {1..6} has index sum(2**(i-1) for i in S)).  Together
with the at-most-one-zero threshold function on 5 bits these orders answer
every inclusion query on the 64 subsets; the test suite re-checks all 4032
ordered pairs and the integrity checksum below.
"""

#: SHA-256 of the newline-joined, space-separated order sequences.
B6_ORDERS_SHA256 = "6fda639d5f30481cd8fe85b5fb087ffe279266ae3dac9e6723551d2fd9960864"

B6_ORDER_SEQUENCES: tuple[tuple[int, ...], ...] = (
    (
        0, 8, 29, 30, 31, 32, 48, 40, 56, 1, 33, 49, 4, 36, 52, 62, 5, 37,
        53, 9, 41, 57, 12, 44, 45, 60, 13, 61, 2, 34, 10, 42, 6, 14, 58, 38,
        46, 3, 35, 59, 7, 39, 11, 15, 43, 47, 16, 18, 28, 19, 26, 27, 22, 50,
        54, 17, 51, 20, 21, 23, 24, 25, 55, 63,
    ),
    (
        0, 32, 36, 37, 34, 16, 20, 52, 1, 48, 17, 21, 53, 2, 18, 50, 54, 3,
        33, 49, 35, 19, 23, 38, 51, 22, 39, 8, 55, 9, 24, 25, 10, 26, 11, 27,
        28, 40, 42, 41, 43, 56, 57, 58, 59, 4, 7, 12, 44, 60, 6, 14, 46, 5,
        13, 45, 47, 61, 15, 30, 62, 29, 31, 63,
    ),
    (
        0, 1, 9, 12, 13, 40, 33, 41, 45, 16, 24, 17, 25, 56, 57, 5, 4, 49,
        20, 21, 28, 29, 61, 2, 6, 18, 22, 26, 3, 7, 19, 10, 11, 27, 23, 14,
        15, 31, 32, 37, 53, 30, 34, 35, 42, 36, 46, 43, 48, 47, 50, 58, 51,
        59, 38, 39, 52, 54, 55, 8, 44, 60, 62, 63,
    ),
    (
        0, 3, 35, 4, 6, 5, 7, 39, 55, 8, 21, 32, 15, 38, 13, 14, 40, 44, 46,
        47, 16, 48, 24, 20, 22, 52, 23, 54, 56, 12, 28, 60, 2, 34, 18, 50,
        10, 42, 26, 30, 58, 9, 62, 1, 11, 17, 25, 27, 29, 19, 31, 33, 41, 43,
        49, 51, 57, 59, 36, 37, 53, 45, 61, 63,
    ),
    (
        0, 8, 51, 10, 11, 43, 25, 2, 42, 16, 24, 18, 50, 17, 19, 26, 27, 34,
        58, 59, 4, 20, 36, 6, 12, 44, 28, 60, 22, 38, 54, 14, 46, 62, 1, 30,
        5, 7, 23, 9, 13, 15, 32, 33, 35, 37, 41, 45, 3, 39, 47, 48, 49, 57,
        52, 21, 53, 29, 31, 40, 56, 55, 61, 63,
    ),
)
