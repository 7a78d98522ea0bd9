"""
SVG timelines of a chain schedule.

Lanes run top to bottom as P1, l1, P2, l2, ..., Pm. Computations sit on
processor lanes and transfers on link lanes, each labelled "load.installment".
Zero-length intervals are not drawn.
"""
import math

from core.exceptions import InputValidationError
from core.timing import retime
from simulation.engine import SimReport

PALETTE = ('#4A90E2', '#F5A623', '#7ED321', '#BD10E0', '#D0021B', '#50E3C2', '#8B572A', '#9013FE')

WIDTH = 900
MARGIN_LEFT = 60
MARGIN_RIGHT = 30
MARGIN_TOP = 30
MARGIN_BOTTOM = 40
LANE_HEIGHT = 28
LANE_GAP = 8
FONT = 'Arial, sans-serif'
MIN_WIDTH = 1e-12


def _fmt(value):
    return f'{value:.2f}'


def _time(value):
    return f'{value:.12g}'


def _tick_step(horizon, target=8):
    raw = horizon / target
    magnitude = 10 ** math.floor(math.log10(raw))
    for factor in (1, 2, 5, 10):
        if raw <= factor * magnitude:
            return factor * magnitude
    return 10 * magnitude


def lanes(m):
    names = []
    for i in range(1, m + 1):
        names.append(f'P{i}')
        if i < m:
            names.append(f'l{i}')
    return names


def render_gantt(platform, schedule, workload=None):
    """
    SVG text for `schedule` (a Schedule or a SimReport) on `platform`.

    A fractions-only schedule needs `workload` and is timed as early as
    possible first.
    """
    if isinstance(schedule, SimReport):
        schedule = schedule.schedule
    if schedule.m != platform.m:
        raise InputValidationError('schedule', value=schedule.m, message='%(field)s has %(value)s processor rows.')
    if not schedule.has_times:
        if workload is None:
            raise InputValidationError('schedule', value='fractions only',
                                       message='%(field)s has no times and no workload to derive them (%(value)s).')
        schedule = retime(platform, workload, schedule)

    m = platform.m
    names = lanes(m)
    horizon = schedule.makespan if schedule.makespan and schedule.makespan > 0 else 1.0
    plot_width = WIDTH - MARGIN_LEFT - MARGIN_RIGHT
    height = MARGIN_TOP + len(names) * (LANE_HEIGHT + LANE_GAP) + MARGIN_BOTTOM

    def x_of(t):
        return MARGIN_LEFT + t / horizon * plot_width

    def y_of(lane):
        return MARGIN_TOP + lane * (LANE_HEIGHT + LANE_GAP)

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{height}" '
        f'viewBox="0 0 {WIDTH} {height}" font-family="{FONT}" font-size="11">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{height}" fill="white"/>',
    ]
    for lane, name in enumerate(names):
        y = y_of(lane)
        out.append(f'<text class="lane" x="{MARGIN_LEFT - 8}" y="{_fmt(y + LANE_HEIGHT / 2 + 4)}" text-anchor="end">{name}</text>')
        out.append(f'<line x1="{MARGIN_LEFT}" y1="{_fmt(y + LANE_HEIGHT)}" x2="{WIDTH - MARGIN_RIGHT}" '
                   f'y2="{_fmt(y + LANE_HEIGHT)}" stroke="#E5E7EB"/>')

    def box(kind, lane, start, end, n, j):
        if end - start <= MIN_WIDTH:
            return
        x0, x1, y = x_of(start), x_of(end), y_of(lane)
        color = PALETTE[n % len(PALETTE)]
        opacity = '1' if kind == 'comp' else '0.6'
        out.append(
            f'<rect class="{kind}" x="{_fmt(x0)}" y="{_fmt(y)}" width="{_fmt(x1 - x0)}" height="{LANE_HEIGHT}" '
            f'fill="{color}" fill-opacity="{opacity}" stroke="#333" stroke-width="0.5" '
            f'data-start="{_time(start)}" data-end="{_time(end)}"><title>{n + 1}.{j + 1} '
            f'[{_time(start)}, {_time(end)}]</title></rect>'
        )
        out.append(f'<text class="label" x="{_fmt((x0 + x1) / 2)}" y="{_fmt(y + LANE_HEIGHT / 2 + 4)}" '
                   f'text-anchor="middle">{n + 1}.{j + 1}</text>')

    for n in range(schedule.n_loads):
        for j in range(schedule.installments[n]):
            for i in range(m):
                box('comp', 2 * i, schedule.comp_start[n][i, j], schedule.comp_end[n][i, j], n, j)
            for link in range(m - 1):
                box('comm', 2 * link + 1, schedule.comm_start[n][link, j], schedule.comm_end[n][link, j], n, j)

    axis_y = y_of(len(names)) + 4
    out.append(f'<line class="axis" x1="{MARGIN_LEFT}" y1="{_fmt(axis_y)}" x2="{WIDTH - MARGIN_RIGHT}" '
               f'y2="{_fmt(axis_y)}" stroke="#333"/>')
    step = _tick_step(horizon)
    for k in range(int(math.floor(horizon / step + 1e-9)) + 1):
        t = k * step
        x = x_of(t)
        out.append(f'<line x1="{_fmt(x)}" y1="{_fmt(axis_y)}" x2="{_fmt(x)}" y2="{_fmt(axis_y + 5)}" stroke="#333"/>')
        out.append(f'<text class="tick" x="{_fmt(x)}" y="{_fmt(axis_y + 18)}" text-anchor="middle">{t:.4g}</text>')
    out.append(f'<text x="{WIDTH - MARGIN_RIGHT}" y="{_fmt(axis_y + 32)}" text-anchor="end">time (s), '
               f'makespan {_time(schedule.makespan)}</text>')
    out.append('</svg>')
    return '\n'.join(out) + '\n'
