"""Frozen reference confusion matrix for metric verification.

A 14x14 count matrix over the confusable target symbols (codes shown in
their raw two-letter/one-letter display forms), from an external
evaluation of a soft-spelling corrector on a large classical-Arabic test
set. Known anchor values for the teh-marbuta row — recall 0.97216,
precision 0.98118, F1 0.97665 — pin the fixture; everything else the
metric tests derive by independent summation over these counts.
"""

# display order of rows/columns; codes mapped to the intermediate alphabet
REF_SYMBOLS = ["A", "H", "J", "O", "T", "ء", "آ", "أ", "ؤ", "إ", "ئ", "ا", "ة", "ى"]

REF_ROWS = [
    [264, 0, 0, 3, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 14699, 0, 0, 66, 0, 0, 0, 0, 0, 0, 0, 102, 0],
    [0, 0, 1083, 0, 0, 0, 0, 3, 0, 0, 2, 7, 0, 0],
    [9, 0, 0, 3888, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 123, 0, 0, 2242, 0, 0, 0, 0, 0, 0, 0, 30, 0],
    [0, 0, 0, 0, 0, 381, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 359, 25, 0, 2, 0, 2, 0, 0],
    [0, 0, 3, 0, 0, 1, 20, 13660, 19, 79, 6, 31, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 15, 315, 0, 17, 4, 0, 0],
    [0, 0, 0, 0, 0, 0, 6, 75, 0, 5358, 1, 3, 0, 0],
    [0, 0, 2, 0, 0, 2, 0, 4, 5, 0, 957, 4, 0, 0],
    [0, 0, 2, 0, 0, 1, 6, 63, 1, 3, 3, 48505, 0, 40],
    [0, 151, 0, 0, 46, 0, 0, 0, 0, 0, 0, 0, 6881, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 107, 0, 3735],
]
