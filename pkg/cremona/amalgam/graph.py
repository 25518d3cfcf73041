# cremona/amalgam/graph.py
"""
The reduction loop as a state graph:

    prepare --(route)--> case_a | case_b_right | case_b_left --> prepare
            \\--------> finish --> END

``prepare`` merges the word into alternating shape, normalizes the letters around j_n and
reads the configuration; each case node applies one rewrite.
"""
import logging
from typing import Any, Dict, List, Optional, Sequence

from langgraph.errors import GraphRecursionError
from langgraph.graph import END, StateGraph
from pydantic.v1 import BaseModel, Field

from cremona.amalgam.moves import Derivation, Trace
from cremona.amalgam.rewriter import (
    analyze, case_a_step, case_b_left, case_b_right, dispatch, finish_linear, normalize_neighbors, preprocess,
)
from cremona.amalgam.state import RewriteState
from cremona.amalgam.words import Letter, complexity, eval_word
from cremona.config import BUDGET_FACTOR, GRAPH_RECURSION_LIMIT
from cremona.errors import BudgetExceeded, NotIdentityInput

logger = logging.getLogger(__name__)

CASE_NODES = ("case_a", "case_b_right", "case_b_left")


def _complexity_list(d: Derivation) -> Optional[List[int]]:
    return list(complexity(d.word, d.field)) if d.word else None


# --- Graph Nodes ---

def prepare_node(state: RewriteState):
    """Alternating shape, normalized neighbours of j_n, then the case decision."""
    d = state["derivation"].copy()
    while True:
        preprocess(d)
        if not d.word:
            return {"derivation": d, "neighbourhood": None, "route": "finish"}
        c = complexity(d.word, d.field)
        if c.D == 1:
            return {"derivation": d, "neighbourhood": None, "route": "finish"}
        if not normalize_neighbors(d, c.n):
            break
    hood = analyze(d.word, d.field)
    route = dispatch(hood)
    logger.debug(f"prepare: complexity {tuple(hood.complexity)}, route {route}")
    return {"derivation": d, "neighbourhood": hood, "route": route}


def _case_node(name: str, step):
    def node(state: RewriteState):
        d = state["derivation"].copy()
        hood = state["neighbourhood"]
        before = list(hood.complexity)
        step(d, hood)
        record = {"case": name, "before": before, "after": _complexity_list(d),
                  "moves": d.spent - state["derivation"].spent}
        stats = {**state["stats"], name: state["stats"].get(name, 0) + 1}
        logger.info(f"{name}: {before} -> {record['after']}")
        return {"derivation": d, "steps": [record], "stats": stats}
    node.__name__ = f"{name}_node"
    return node


def finish_node(state: RewriteState):
    d = state["derivation"].copy()
    finish_linear(d)
    logger.debug(f"finish: {len(d.word)} letter(s) left")
    return {"derivation": d, "neighbourhood": None, "route": None}


def route_after_prepare(state: RewriteState) -> str:
    return state["route"]


# --- Graph Definition ---
workflow = StateGraph(RewriteState)

workflow.add_node("prepare", prepare_node)
workflow.add_node("case_a", _case_node("case_a", case_a_step))
workflow.add_node("case_b_right", _case_node("case_b_right", case_b_right))
workflow.add_node("case_b_left", _case_node("case_b_left", case_b_left))
workflow.add_node("finish", finish_node)

workflow.set_entry_point("prepare")
workflow.add_conditional_edges(
    "prepare",
    route_after_prepare,
    {
        "case_a": "case_a",
        "case_b_right": "case_b_right",
        "case_b_left": "case_b_left",
        "finish": "finish",
    }
)
for name in CASE_NODES:
    workflow.add_edge(name, "prepare")
workflow.add_edge("finish", END)

rewriter_graph = workflow.compile()


# --- Entry points ---

class RewriteOutcome(BaseModel):
    trace: Trace = Field(description="Certificate from the input word to the final word.")
    steps: List[Dict[str, Any]] = Field(default_factory=list, description="One record per case step.")
    stats: Dict[str, Any] = Field(default_factory=dict, description="Number of steps taken by each case.")
    budget: int = Field(description="Elementary move budget the run was given.")

    class Config:
        arbitrary_types_allowed = True

    def to_dict(self) -> Dict[str, Any]:
        return {"moves": self.trace.elementary_count(), "top_level_moves": len(self.trace.moves),
                "final_length": len(self.trace.final), "kinds": self.trace.kinds_used(),
                "steps": self.steps, "stats": self.stats, "budget": self.budget}


def default_budget(word: Sequence[Letter]) -> int:
    total = sum(letter.degree for letter in word)
    return BUDGET_FACTOR * max(total, 1) ** 2


def rewrite_identity(word: Sequence[Letter], field, budget: Optional[int] = None) -> RewriteOutcome:
    """Reduce a word evaluating to the identity to the empty word, recording every move."""
    word = list(word)
    if not eval_word(word, field).is_identity():
        raise NotIdentityInput("The word does not evaluate to the identity map.", length=len(word))
    budget = budget if budget is not None else default_budget(word)
    initial: RewriteState = {"derivation": Derivation(word, field, budget=budget), "neighbourhood": None,
                             "route": None, "steps": [], "stats": {}}
    logger.info(f"rewrite_identity: {len(word)} letter(s), budget {budget}")
    try:
        final = rewriter_graph.invoke(initial, config={"recursion_limit": GRAPH_RECURSION_LIMIT})
    except GraphRecursionError:
        raise BudgetExceeded("Rewriting loop did not terminate within the step limit.",
                             limit=GRAPH_RECURSION_LIMIT, budget=budget)
    trace = final["derivation"].to_trace()
    logger.info(f"rewrite_identity: {trace.elementary_count()} elementary move(s), final length {len(trace.final)}")
    return RewriteOutcome(trace=trace, steps=final.get("steps", []), stats=final.get("stats", {}), budget=budget)


def reduce_identity(word: Sequence[Letter], field, budget: Optional[int] = None) -> Trace:
    return rewrite_identity(word, field, budget).trace

