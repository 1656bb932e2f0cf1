"""Reference values in the library's polynomial syntax."""

STAR_PRODUCT = {
    1: "a1*b1",
    2: "a1^2*b1^2 - a2*b1^2 - a1^2*b2 + 2*a2*b2",
    3: (
        "a1^3*b1^3 - 2*a1*a2*b1^3 + a3*b1^3 - 2*a1^3*b1*b2 + 5*a1*a2*b1*b2"
        " - 3*a3*b1*b2 + a1^3*b3 - 3*a1*a2*b3 + 3*a3*b3"
    ),
}

GHOST_LAMBDA = {
    1: "a1",
    2: "-a1^2 + 2*a2",
    3: "a1^3 - 3*a1*a2 + 3*a3",
}

FROBENIUS_3 = {
    1: "x1^3 + 3*x3",
    2: "x2^3 - 3*x1^3*x3 - 3*x3^2 + 3*x6",
    3: "-3*x1^6*x3 - 9*x1^3*x3^2 - 8*x3^3 + 3*x9",
    4: (
        "-3*x1^9*x3 + 3*x1^3*x2^3*x3 - 18*x1^6*x3^2 + 3*x2^3*x3^2 - 36*x1^3*x3^3"
        " - 24*x3^4 + x4^3 - 3*x2^3*x6 + 9*x1^3*x3*x6 + 9*x3^2*x6 - 3*x6^2 + 3*x12"
    ),
    5: "-3*x1^12*x3 - 18*x1^9*x3^2 - 54*x1^6*x3^3 - 81*x1^3*x3^4 - 48*x3^5 + x5^3 + 3*x15",
}

WITT_TOWER = {
    2: [
        ("x0", "1 + x0"),
        ("x1", "x0 + x1"),
        ("x2", "x0 + x0^3 + x0*x1 + x2"),
        (
            "x3",
            "x0 + x0^3 + x0^5 + x0^7 + x0^2*x1 + x0^3*x1 + x0^4*x1 + x0*x1^3"
            " + x0*x2 + x0^3*x2 + x0*x1*x2 + x3",
        ),
    ],
    3: [
        ("x0", "1 + x0"),
        ("x1", "2*x0 + 2*x0^2 + x1"),
        (
            "x2",
            "2*x0 + 2*x0^2 + 2*x0^4 + 2*x0^5 + 2*x0^7 + 2*x0^8 + 2*x0^2*x1"
            " + x0^3*x1 + 2*x0^4*x1 + x0*x1^2 + x0^2*x1^2 + x2",
        ),
    ],
}

BERNOULLI = [
    "1",
    "-1/2 + u",
    "1/6 - u + u^2",
    "1/2*u - 3/2*u^2 + u^3",
    "-1/30 + u^2 - 2*u^3 + u^4",
    "-1/6*u + 5/3*u^3 - 5/2*u^4 + u^5",
]
