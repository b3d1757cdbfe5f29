from fractions import Fraction

from hypothesis import strategies as st

from quadinc.geometry import Point3

small_rationals = st.builds(
    Fraction, st.integers(-30, 30), st.integers(1, 6)
)

points3 = st.builds(Point3, small_rationals, small_rationals, small_rationals)

# lines recorded by the acceptance suite, echoed in the terminal summary
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
