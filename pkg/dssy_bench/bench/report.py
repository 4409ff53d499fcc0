import csv
import math
from fractions import Fraction
from typing import Iterable, List, Optional, TextIO

from .study import ConvergenceRow
from .timing import TimingRow

CSV_COLUMNS = ['h', 'dof', 'err_l2', 'ratio_l2', 'err_h1', 'ratio_h1']
PRESSURE_COLUMNS = ['err_p', 'ratio_p']


def _error(value: Optional[float]) -> str:
    return '' if value is None else '%.4e' % value


def _ratio(value: Optional[float]) -> str:
    return '' if value is None else '%.2f' % value


def table_error(value: Optional[float]) -> str:
    """0.4145E-02 style: mantissa in [0.1, 1)."""
    if value is None:
        return ''
    if value == 0:
        return '0.0000E+00'
    exponent = math.floor(math.log10(abs(value))) + 1
    mantissa = value / 10 ** exponent
    if round(abs(mantissa), 4) >= 1:
        mantissa /= 10
        exponent += 1
    return f"{mantissa:.4f}E{exponent:+03d}"


def h_label(h: float) -> str:
    frac = Fraction(h).limit_denominator(4096)
    return str(frac) if frac.numerator == 1 else '%g' % h


def _has_pressure(rows: List[ConvergenceRow]) -> bool:
    return any(row.err_p is not None for row in rows)


def write_csv(rows: Iterable[ConvergenceRow], stream: TextIO) -> None:
    rows = list(rows)
    pressure = _has_pressure(rows)
    writer = csv.writer(stream, lineterminator='\n')
    writer.writerow(CSV_COLUMNS + (PRESSURE_COLUMNS if pressure else []))
    for row in rows:
        line = ['%g' % row.h, row.dof,
                _error(row.err_l2), _ratio(row.ratio_l2),
                _error(row.err_h1), _ratio(row.ratio_h1)]
        if pressure:
            line += [_error(row.err_p), _ratio(row.ratio_p)]
        writer.writerow(line)


def write_markdown(rows: Iterable[ConvergenceRow], stream: TextIO) -> None:
    rows = list(rows)
    pressure = _has_pressure(rows)
    header = ['h', 'DOF', '‖u−u_h‖₀', 'ratio', '‖u−u_h‖₁,h', 'ratio']
    if pressure:
        header += ['‖p−p_h‖₀', 'ratio']
    stream.write('| ' + ' | '.join(header) + ' |\n')
    stream.write('|' + '|'.join(['---'] + ['---:'] * (len(header) - 1)) + '|\n')
    for row in rows:
        cells = [h_label(row.h), str(row.dof),
                 table_error(row.err_l2), _ratio(row.ratio_l2),
                 table_error(row.err_h1), _ratio(row.ratio_h1)]
        if pressure:
            cells += [table_error(row.err_p), _ratio(row.ratio_p)]
        stream.write('| ' + ' | '.join(cells) + ' |\n')


def write_timing_csv(rows: Iterable[TimingRow], stream: TextIO,
                     labels=('np', 'p')) -> None:
    writer = csv.writer(stream, lineterminator='\n')
    writer.writerow(['h', f't_{labels[0]}', f't_{labels[1]}', 'ratio'])
    for row in rows:
        writer.writerow(['%g' % row.h, '%.4e' % row.t_numerator,
                         '%.4e' % row.t_denominator, '%.4f' % row.ratio])


def write_timing_markdown(rows: Iterable[TimingRow], stream: TextIO,
                          labels=('np', 'p')) -> None:
    stream.write(f"| h | t({labels[0]})/t({labels[1]}) |\n|---|---:|\n")
    for row in rows:
        stream.write(f"| {h_label(row.h)} | {row.ratio:.4f} |\n")


WRITERS = {'csv': write_csv, 'md': write_markdown}
TIMING_WRITERS = {'csv': write_timing_csv, 'md': write_timing_markdown}
