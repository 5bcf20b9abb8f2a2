"""Tree-mining game engine and collective tree exploration laboratory."""

from .trees import (
    Configuration,
    RootedTree,
    StructurePair,
    TreeError,
    min_active_depth,
    transport_distance,
)
from .game import (
    AddMiner,
    AdversaryMove,
    Finish,
    GameState,
    GameTrace,
    IllegalMoveError,
    InvalidResponseError,
    Kill,
    PlayerResponse,
    RoundContext,
    StopRule,
    StrategyFault,
    apply_round,
    run_game,
    verify_game_trace,
)
from .players import (
    EmulationLimitError,
    PlayerStrategy,
    RecursiveStrategy,
    bounded_horizon,
    parse_player,
    strategy_k2,
    strategy_k3,
    strategy_recursive,
)
from .adversaries import (
    AdversaryStrategy,
    lower_bound_adversary,
    parse_adversary,
    random_adversary,
    replay_adversary,
)
from .analysis import (
    AsymptoticReport,
    SolveResult,
    ak,
    bk,
    check_asymptotic,
    ck,
    competitive_team_size,
    growth_ratio,
    lower_bound_value,
    minimax_value,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
