# cremona/amalgam/state.py
import operator
from typing import Annotated, Any, Dict, List, Optional, TypedDict

from cremona.amalgam.moves import Derivation
from cremona.amalgam.rewriter import Neighbourhood


class RewriteState(TypedDict):
    """
    State of the reduction loop.

    Attributes:
        derivation: The word under rewriting and every move applied so far.
        neighbourhood: Configuration at n read by the last analysis, None once the word is linear.
        route: Next step chosen by the analysis ('case_a', 'case_b_right', 'case_b_left', 'finish').
        steps: One record per case step: the case, complexity before and after, moves spent.
        stats: Number of steps taken by each case; nodes return an updated copy.
    """
    derivation: Derivation
    neighbourhood: Optional[Neighbourhood]
    route: Optional[str]

    steps: Annotated[List[Dict[str, Any]], operator.add]
    stats: Dict[str, Any]
