import cmath

from hypothesis import HealthCheck, settings

settings.register_profile("default", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def numeric(x) -> complex:
    """Floating-point value of a Cyclo, for cross-checks against exact results."""
    w = cmath.exp(2j * cmath.pi / x.n)
    return sum(complex(float(c)) * w ** j for j, c in enumerate(x.c))


def alternating_bicharacter(T, gens, exps):
    """Alternating bicharacter with beta(g_i, g_j) = zeta^{exps[(i, j)]} for i < j.

    Exponents are taken modulo gcd of the generator orders, in units of
    zeta_{gcd}; this is an independent construction from the generator
    table parser.
    """
    from math import gcd

    from supergrading.abelian import Bicharacter
    from supergrading.cyclo import root_of_unity

    k = len(gens)
    vals = [[1] * k for _ in range(k)]
    for i in range(k):
        for j in range(i + 1, k):
            d = gcd(gens[i].order(), gens[j].order())
            e = exps.get((i, j), 0) % d
            vals[i][j] = root_of_unity(d, e)
            vals[j][i] = root_of_unity(d, -e)
    return Bicharacter.from_generator_values(T, gens, vals)


# PASS/FAIL lines from the acceptance suite, repeated in the terminal summary
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.write_sep("=", "acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
