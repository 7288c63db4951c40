"""Writes the bank files under crates/framelet/banks.

Closed forms are evaluated with mpmath at 50 digits and rounded once to
17 significant digits. Decimal listings are copied as given, with
bn = conj(bp).
"""

import os
import sys

from mpmath import mp, mpf, mpc, sqrt

mp.dps = 50

OUT = os.path.join(os.path.dirname(__file__), "..", "crates", "framelet", "banks")


def poly(lo, cs):
    return (lo, [mpc(c) for c in cs])


def mul(p, q):
    lo = p[0] + q[0]
    out = [mpc(0)] * (len(p[1]) + len(q[1]) - 1)
    for i, x in enumerate(p[1]):
        for j, y in enumerate(q[1]):
            out[i + j] += x * y
    return (lo, out)


def scale(p, s):
    return (p[0], [c * s for c in p[1]])


def shift(p, k):
    return (p[0] + k, p[1])


def conj(p):
    return (p[0], [c.conjugate() for c in p[1]])


def fmt(x):
    x = float(x)
    return "%.16e" % x


def write(name, field, filters, comment):
    lines = ["# " + comment, "FRAMELET-BANK 1", "field " + field]
    for fname, (lo, cs) in filters:
        lines.append("filter %s lo %d len %d" % (fname, lo, len(cs)))
        for c in cs:
            lines.append("%s %s" % (fmt(c.real), fmt(c.imag)))
    path = os.path.join(OUT, name)
    with open(path, "w") as f:
        f.write("\n".join(lines) + "\n")
    print("wrote", path, file=sys.stderr)


LOWPASS = {
    "haar": poly(0, [mpf(1) / 2, mpf(1) / 2]),
    "bspline2": poly(-1, [mpf(c) / 4 for c in (1, 2, 1)]),
    "bspline4": poly(-2, [mpf(c) / 16 for c in (1, 4, 6, 4, 1)]),
    "interp4": poly(-3, [mpf(c) / 32 for c in (-1, 0, 9, 16, 9, 0, -1)]),
    "sixtap": poly(-2, [mpf(c) / 64 for c in (-3, 5, 30, 30, 5, -3)]),
}


def initial(name):
    if name == "bspline2":
        d = poly(-1, [-1, 1])
        return scale(d, sqrt(6) / 6), scale(mul(d, poly(0, [1, 3])), sqrt(3) / 12)
    if name == "bspline4":
        r = sqrt(14)
        k = sqrt(34 + 8 * r)
        d = poly(0, [1, -1])
        q1 = poly(0, [8 * r + 31, 40 * r + 155, 64 * r + 261, 65])
        q2 = poly(0, [-r - 3, -(5 * r + 15), 10])
        return (
            scale(mul(d, q1), k * (r - 4) / 2080),
            scale(mul(d, q2), k * (4 * r - 17) / 1300),
        )
    if name == "interp4":
        r = sqrt(3)
        k = sqrt(298527 - 142344 * r)
        common = shift(mul(poly(0, [1, -2, 1]), poly(0, [2 - r, 1])), -3)
        q1 = poly(0, [-86 - 7 * r, 21 + 86 * r, 512 + 57 * r, 1977])
        q2 = poly(0, [2 * r - 1, r - 6, -44])
        return (
            scale(mul(common, q1), k * (72 * r + 151) / 458600736),
            scale(mul(common, q2), k * (2 * sqrt(2) + sqrt(6)) / 173976),
        )
    if name == "sixtap":
        common = poly(-2, [1, -2, 1])
        q1 = poly(0, [-93, -31, 1921, 3203])
        q2 = poly(0, [3, 1, 248])
        return (
            scale(mul(common, q1), sqrt(297879) / 6354752),
            scale(mul(common, q2), -sqrt(496465) / 794344),
        )
    raise KeyError(name)


def c(re, im):
    return mpc(mpf(re), mpf(im))


LISTINGS = {
    "bspline2-n2-printed": ("bspline2", -3, [
        c("-0.0296422357615", "0.0245498453274"),
        c("0.0659915437767", "-0.0546545208555"),
        -c("0.134097034665", "0.310569363502"),
        -c("0.199259492568", "0.279133899130"),
        c("0.256396707846", "-0.0503651650867"),
        c("0.00392785810334", "0.00474261627250"),
        c("0.0366826532674", "0.0442917599692"),
    ]),
    "bspline2-n2": ("bspline2", -3, [
        c("-0.0296422357615", "0.0245498453274"),
        c("0.0659915437767", "-0.0546545208555"),
        -c("0.134097034665", "-0.310569363502"),
        -c("0.199259492568", "0.279133899130"),
        c("0.256396707846", "-0.0503651650867"),
        c("0.00392785810334", "0.00474261627250"),
        c("0.0366826532674", "0.0442917599692"),
    ]),
    "bspline4-n0": ("bspline4", -2, [
        c("-0.00557113140380", "0.0731731460340"),
        c("-0.0222840645179", "0.292693813728"),
        -c("0.318362332504", "0.258768579113"),
        c("0.307215151326", "-0.0833740786820"),
        c("0.0389934625526", "-0.0237234566220"),
    ]),
    "bspline4-n2": ("bspline4", -4, [
        c("0.0136421172460", "-0.00936826775525"),
        c("0.0545694833985", "-0.0374729096370"),
        -c("0.117756260732", "-0.0384187816047"),
        c("0.176658675556", "-0.291095343052"),
        c("0.215356267335", "0.333766056656"),
        -c("0.226650692255", "-0.0670707536790"),
        -c("0.0454230034494", "-0.00120115849369"),
        -c("0.0601885689225", "0.0876476822545"),
        -c("0.0102063889665", "0.0148634718020"),
    ]),
    "interp4-n0": ("interp4", -3, [
        c("0.000765760176753", "0.00404161855341"),
        c("0", "0"),
        -c("0.0403653729400", "0.0880450827053"),
        -c("0.0122521628281", "0.0646658968547"),
        c("0.267462323473", "0.228631206605"),
        -c("0.341301227764", "-0.0646658968553"),
        c("0.125690679881", "-0.144627742454"),
    ]),
    "sixtap-n0": ("sixtap", -2, [
        c("-0.00427685553137", "0.00414104756179"),
        c("0.00712809255229", "-0.00690174593633"),
        -c("0.0855371106277", "0.173923997595"),
        c("0.256611331884", "0.179445394344"),
        -c("0.263739424437", "-0.169782950034"),
        c("0.0898139661592", "-0.172543648408"),
    ]),
    "sixtap-n2": ("sixtap", -4, [
        c("0.000174962462944", "0.000667428960698"),
        -c("0.000291604104907", "0.00111238160116"),
        c("0.00604271655936", "0.00470763073225"),
        -c("0.0147368599441", "0.0256441568388"),
        c("0.119900001837", "0.197463905830"),
        -c("0.282016222613", "0.153449185519"),
        c("0.207557346012", "-0.197627972773"),
        c("-0.0335526030324", "0.174187921034"),
        c("0.0198783637212", "-0.00521099275091"),
        c("-0.0229561008971", "0.00601780292596"),
    ]),
}


def main():
    os.makedirs(OUT, exist_ok=True)
    for name, a in LOWPASS.items():
        write(name + "-a.bank", "real", [("a", a)], "low-pass filter only")
    write(
        "haar.bank",
        "real",
        [("a", LOWPASS["haar"]), ("b1", poly(0, [mpf(1) / 2, -mpf(1) / 2]))],
        "orthogonal Haar bank",
    )
    for name in ("bspline2", "bspline4", "interp4", "sixtap"):
        b1, b2 = initial(name)
        write(
            name + "-initial.bank",
            "real",
            [("a", LOWPASS[name]), ("b1", b1), ("b2", b2)],
            "closed-form real tight completion",
        )
    s = 3 * sqrt(2)
    bp = scale(mul(poly(-1, [-1, 1]), poly(0, [c(s, 6), c(-s, 6)])), mpf(1) / 24)
    write(
        "bspline2-n0.bank",
        "complex",
        [("a", LOWPASS["bspline2"]), ("bp", bp), ("bn", conj(bp))],
        "closed-form degree-0 optimum, bn = conj(bp)",
    )
    for name, (lp, lo, cs) in LISTINGS.items():
        bp = (lo, cs)
        note = "12-digit decimal listing, bn = conj(bp)"
        if name == "bspline2-n2-printed":
            note += "; z^-1 coefficient as printed"
        elif name == "bspline2-n2":
            note += "; z^-1 imaginary part sign corrected"
        write(name + ".bank", "complex", [("a", LOWPASS[lp]), ("bp", bp), ("bn", conj(bp))], note)


if __name__ == "__main__":
    main()
