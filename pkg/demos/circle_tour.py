"""
Densities on the circle
=======================

A periodic density either has a gap in its support, is constant, or must
fail log-concavity somewhere.  The decision procedure below uses that to
sort candidates.
"""

from dhtoric import circle_classify, hamiltonian_decision
from dhtoric.gallery import circle_fixtures

for name, (f, criticals) in circle_fixtures().items():
    cls = circle_classify(f)
    verdict = hamiltonian_decision(f, criticals)
    print(f"{name:14} {cls.kind.value:28} {verdict.decision.value}")
    if cls.chart_failure is not None:
        print("    fails at", cls.chart_failure.location, "for", cls.chart_failure.reason.value)
    print("   ", verdict.report)
