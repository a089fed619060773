"""Shared record of acceptance outcomes, printed by the conftest summary hook."""

RESULTS = {}


def record(number, passed, detail):
    RESULTS[number] = (passed, detail)


def lines():
    out = []
    for number in sorted(RESULTS):
        passed, detail = RESULTS[number]
        out.append(f"criterion {number}: {'PASS' if passed else 'FAIL'} - {detail}")
    return out
