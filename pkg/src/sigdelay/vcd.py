"""Value-change-dump export and scalar import for waveform sets.

Rational switch times are scaled by L, the lcm of every breakpoint
denominator, so all VCD timestamps are integers; L is recorded in a
``$comment`` and undone on import.  The initial dump at #0 carries the
values at 0-0; a net that switches at time 0 gets a second change at
timestamp 0 after the dump section.  VCD orders values within a
timestamp, so point values at switch instants survive the round trip
for signals (right-continuous by definition); step functions that are
not signals are not exportable.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm

from .stepfn import StepFunction, as_signal
from .circuit import WaveformSet

_ID_CHARS = [chr(c) for c in range(33, 127)]


def _ident(i: int) -> str:
    out = ""
    i += 1
    while i > 0:
        i, r = divmod(i - 1, len(_ID_CHARS))
        out = _ID_CHARS[r] + out
    return out


def export_vcd(w: WaveformSet) -> str:
    """Serialize a waveform set; every signal must be a signal proper."""
    for name, sig in w.signals.items():
        if not sig.is_signal():
            raise ValueError(f"net {name!r} is not exportable to VCD "
                             "(not right-continuous or switches before 0)")
    denoms = [b.denominator for sig in w.signals.values() for b in sig.bps]
    denoms.append(w.horizon.denominator)
    scale = lcm(*denoms) if denoms else 1
    names = list(w.signals)
    ids = {name: _ident(i) for i, name in enumerate(names)}
    lines = [
        "$comment sigdelay scale lcm=%d horizon=%s $end" % (scale, w.horizon),
        "$timescale 1 s $end",
        "$scope module top $end",
    ]
    for name in names:
        lines.append(f"$var wire 1 {ids[name]} {name} $end")
    lines.append("$upscope $end")
    lines.append("$enddefinitions $end")
    lines.append("#0")
    lines.append("$dumpvars")
    for name in names:
        lines.append(f"{w.signals[name].leading}{ids[name]}")
    lines.append("$end")
    events: dict[int, list[str]] = {}
    for name in names:
        sig = w.signals[name]
        for t, v in zip(sig.bps, sig.at):
            events.setdefault(int(t * scale), []).append(f"{v}{ids[name]}")
    for stamp in sorted(events):
        lines.append(f"#{stamp}")
        lines.extend(events[stamp])
    return "\n".join(lines) + "\n"


def import_vcd(text: str) -> WaveformSet:
    """Parse scalar VCD produced by export_vcd back into a waveform set."""
    scale = 1
    horizon: Fraction | None = None
    names: dict[str, str] = {}  # id -> net name
    initial: dict[str, int] = {}
    changes: dict[str, list[tuple[Fraction, int]]] = {}
    now = Fraction(0)
    in_dump = False
    seen_defs = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("$comment"):
            for tok in line.split():
                if tok.startswith("lcm="):
                    scale = int(tok[4:])
                elif tok.startswith("horizon="):
                    horizon = Fraction(tok[8:])
            continue
        if line.startswith("$var"):
            parts = line.split()
            if len(parts) < 6 or parts[1] != "wire" or parts[2] != "1":
                raise ValueError(f"line {lineno}: only scalar wires are supported")
            names[parts[3]] = parts[4]
            changes[parts[4]] = []
            continue
        if line.startswith("$enddefinitions"):
            seen_defs = True
            continue
        if line.startswith("$dumpvars"):
            in_dump = True
            continue
        if line.startswith("$end"):
            in_dump = False
            continue
        if line.startswith("$"):
            continue
        if line.startswith("#"):
            now = Fraction(int(line[1:]), scale)
            continue
        if line[0] in "01":
            if not seen_defs:
                raise ValueError(f"line {lineno}: value change before definitions")
            bit, ident = int(line[0]), line[1:]
            if ident not in names:
                raise ValueError(f"line {lineno}: unknown identifier {ident!r}")
            net = names[ident]
            if in_dump:
                initial[net] = bit
            else:
                changes[net].append((now, bit))
            continue
        if line[0] in "bBrR":
            raise ValueError(f"line {lineno}: vector and real values are not supported")
        raise ValueError(f"line {lineno}: unrecognized VCD line {line!r}")
    signals = {}
    last_t = Fraction(0)
    for net, ident in ((v, k) for k, v in names.items()):
        if net not in initial:
            raise ValueError(f"no initial dump for net {net!r}")
        toggles = []
        v = initial[net]
        for t, bit in changes[net]:
            if bit != v:
                toggles.append(t)
                v = bit
            last_t = max(last_t, t)
        signals[net] = StepFunction.from_toggles(initial[net], toggles)
        as_signal(signals[net])
    if horizon is None:
        horizon = last_t
    return WaveformSet(signals, horizon)
