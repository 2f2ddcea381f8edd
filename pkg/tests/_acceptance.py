"""Verdict lines collected by the acceptance suite and printed at the end of the run."""

VERDICTS = {}


def record(number, title, ok, detail):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title} ({detail})"
    VERDICTS[number] = line
    print(line)
    return ok
