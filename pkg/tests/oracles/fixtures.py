"""Frozen 50-digit mpmath reference values (see generate_fixtures.py)."""

GAMMA_3_7 = 4.1706517837966031654
HYP2F1_M075_125_05_02 = 0.60916827761553081133
BABENKO_4_3 = 0.93668707437524813992

# (nu, mu, t, P_{mu-nu-1/2}^{1/2-nu}(cos t)): Ferrers values for G&R 3.252.10 triples
LEGENDRE_CASES = [
    (1.0, 1.25, 2.0943951023931953, 1.7147655162099831084),
    (0.75, 0.5, 0.4, 0.74475196720814635294),
    (0.75, 1.0, 1.3, 1.1000516106897137514),
    (1.5, 0.5, 2.2, 1.2153289019142174604),
    (1.5, 2.5, 0.9, 0.4473069861001113097),
    (2.0, 1.0, 1.7, 0.73838758821369190467),
    (2.0, 3.0, 2.9, 10.678185821532229927),
    (2.5, 1.5, 0.6, 0.046785158758165547559),
    (2.5, 4.0, 1.1, 0.15371698018925219346),
    (3.0, 0.75, 2.5, 0.67381165005704587807),
    (3.0, 5.0, 0.3, 0.0026083550297483295401),
    (1.25, 0.3, 1.9, 0.96729938645321486384),
    (1.25, 2.2, 2.7, 1.4801543714115863134),
    (0.6, 0.2, 1.0, 1.0105928829996861318),
    (0.6, 1.0, 2.0, 1.208284895366673094),
    (3.5, 3.5, 1.5, 0.13915697778353997104),
    (4.0, 2.0, 0.8, 0.0037039985264769936836),
    (1.75, 1.75, 3.0, 29.220945857195465135),
    (2.25, 0.9, 0.15, 0.006683501240348863445),
    (1.1, 1.6, 1.45, 1.0407452685335062688),
]
