"""Collects one PASS/FAIL line per acceptance criterion for the terminal summary."""

RESULTS = {}


def record(criterion: int, title: str, passed: bool, detail: str = ""):
    RESULTS[criterion] = (title, bool(passed), detail)


def lines():
    out = []
    for k in sorted(RESULTS):
        title, passed, detail = RESULTS[k]
        tail = f" ({detail})" if detail else ""
        out.append(f"{'PASS' if passed else 'FAIL'} criterion {k}: {title}{tail}")
    return out
