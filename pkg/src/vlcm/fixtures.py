"""Prime constants for the named-curve instances.

Values are derived from the published curve parameters: the field prime of
each curve is the constant multiplied by the Montgomery quotient digit.
"""

_BN_U = -(2**62 + 2**55 + 1)

CURVES = {
    "anomalous": 17676318486848893030961583018778670610489016512983351739677143,
    "anssifrp": 0xF1FD178C0B3AD58F10126DE8CE42435B3961ADBCABC8CA6DE8FCF353D86E9C03,
    "bn(2,254)": 36 * _BN_U**4 + 36 * _BN_U**3 + 24 * _BN_U**2 + 6 * _BN_U + 1,
    "brainpool256": 0xA9FB57DBA1EEA9BC3E660A909D838D726E3BF623D52620282013481D1F6E5377,
    "brainpool384": 0x8CB91E82A3386D280F5D6F7E50E641DF152F7109ED5456B412B1DA197FB71123ACD3A729901D1A71874700133107EC53,
    "sike610": 2**305 * 3**192 - 1,
    "sike751": 2**372 * 3**239 - 1,
}

# Reported high-level results: width, then (oper, step, seconds) for p = 8, 16, 24.
TABLE_I = {
    "anomalous": (220, {8: (19, 13, 4.5), 16: (15, 12, 4.5), 24: (15, 10, 4.8)}),
    "anssifrp": (272, {8: (60, 33, 5.7), 16: (43, 24, 5.6), 24: (43, 15, 6.8)}),
    "bn(2,254)": (268, {8: (39, 22, 5.5), 16: (32, 16, 5.4), 24: (29, 18, 5.7)}),
    "brainpool256": (268, {8: (58, 35, 5.6), 16: (44, 27, 5.5), 24: (41, 20, 7.3)}),
    "brainpool384": (400, {8: (80, 51, 8.1), 16: (61, 33, 7.9), 24: (54, 27, 10.4)}),
    "sike610": (640, {8: (69, 39, 12.4), 16: (51, 28, 12.5), 24: (47, 24, 14.3)}),
    "sike751": (768, {8: (87, 50, 14.7), 16: (62, 36, 14.7), 24: (55, 27, 17.3)}),
}


def curve_hex(name: str) -> str:
    return format(CURVES[name], "x")
