"""Frozen test vectors: real soft-misspelling pairs (wrong, correct).

These cover every error family the corrector targets: hamza carrier
confusion at the start, middle and end of words, word-final teh/teh
marbuta/heh confusion, alef/alef-maksura endings, and waw/waw-alef
endings (the addition/omission cases that motivate the one-to-one
intermediate coding).
"""

MISSPELLING_PAIRS = [
    ("قرأة", "قراءة"),  # middle hamza written on an alef
    ("عفى", "عفا"),  # alef maksura instead of word-final alef
    ("بكا", "بكى"),  # alef instead of alef maksura
    ("لا تنظرو", "لا تنظروا"),  # omitted alef after word-final waw
    ("كثرت", "كثرة"),  # teh instead of teh marbuta
    ("المرووة", "المروءة"),  # middle hamza written on waw
    ("أشيأ", "أشياء"),  # word-final hamza written on alef
    ("خطء", "خطأ"),  # standalone hamza instead of hamza on alef
    ("شئ", "شيء"),  # word-final hamza written on yeh
    ("اسماء", "السماء"),  # dropped lam before a solar letter
    ("ساعة", "ساعات"),  # teh marbuta instead of teh
    ("مسئولية", "مسؤولية"),  # middle hamza on yeh instead of waw
    ("أبن", "ابن"),  # hamzat qat' instead of hamzat wasl
    ("يبحثوا", "يبحثو"),  # inserted alef after word-final waw
    ("مكتبه", "مكتبة"),  # heh instead of teh marbuta
]

ALL_SPELLINGS = [s for pair in MISSPELLING_PAIRS for s in pair]
