"""Expression language, evaluator and scenario runners."""

from .evaluator import EvalContext, eval_expr, eval_poly, evaluate, evaluate_poly, format_value, parse_series
from .parser import ParseError, parse, parse_poly, to_text
from .scenarios import SCENARIOS, ScenarioReport
