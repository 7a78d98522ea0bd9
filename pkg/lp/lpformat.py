"""CPLEX LP text export, one term per line."""
import logging

from .types import Relation

logger = logging.getLogger(__name__)

PRECISION = '.17g'
COEF_TEMPLATE = '%+' + PRECISION + ' %s\n'
RHS_TEMPLATES = {
    Relation.LE: '<= %' + PRECISION + '\n\n',
    Relation.GE: '>= %' + PRECISION + '\n\n',
    Relation.EQ: '= %' + PRECISION + '\n\n',
}
LB_TEMPLATE = '   %' + PRECISION + ' <= %s\n'


def _no_negative_zero(value):
    return 0.0 if value == 0 else value


def _terms(output, coeffs, names):
    if not coeffs:
        # LP syntax needs at least one term
        output.append(COEF_TEMPLATE % (0.0, names[-1]))
    for col, coef in coeffs:
        output.append(COEF_TEMPLATE % (coef, names[col]))


def export_lp_text(problem, title='divload'):
    """
    Text of `problem` in CPLEX LP format: objective, rows c1..cK in row order,
    and a bounds section declaring every variable nonnegative.
    """
    names = [tag.name for tag in problem.var_meta]
    output = ["\\* Source %s format_version=1 *\\\n" % title]
    context = problem.context
    if 'q' in context:
        output.append(
            "\\* m=%d q=%s form=%s time_scale=%s *\\\n"
            % (context['platform'].m, list(context['q']), 'reduced' if problem.reduced else 'full', repr(problem.time_scale))
        )
    output.append("\nmin\nobj:\n")
    objective = tuple((k, float(v)) for k, v in enumerate(problem.objective) if v != 0)
    _terms(output, objective, names)

    output.append("\ns.t.\n\n")
    for r, row in enumerate(problem.rows, start=1):
        if row.family:
            output.append("\\* %s *\\\n" % row.name)
        output.append("c%d:\n" % r)
        _terms(output, row.coeffs, names)
        output.append(RHS_TEMPLATES[Relation(row.relation)] % _no_negative_zero(row.rhs))

    output.append("bounds\n")
    for name in names:
        output.append(LB_TEMPLATE % (0, name))
    output.append("end\n")
    logger.debug(f"Exported LP with {problem.n_vars} columns and {problem.n_rows} rows")
    return "".join(output)
