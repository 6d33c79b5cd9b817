"""Collects one pass/fail line per acceptance criterion for the terminal summary."""

LINES: list[str] = []


def record(number: int, ok: bool, text: str, seconds: float) -> None:
    line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {text} [{seconds:.2f}s]"
    LINES.append(line)
    print(line)
