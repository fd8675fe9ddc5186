from . import pddl, plan, sexp

__all__ = ["pddl", "plan", "sexp"]
