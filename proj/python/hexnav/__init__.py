"""Hex-grid navigation lab: wall rules, space reduction, tabular RL."""

from hexnav._core import (
    Algo,
    ExplorationStrategy,
    HexMap,
    MapParseError,
    NavEnv,
    NavError,
    Path,
    QTable,
    RegionMask,
    RurlConfig,
    Schedule,
    StrategyKind,
    TheoremReport,
    Trajectory,
    TrainResult,
    aco,
    astar,
    bfs_shortest,
    cell_center,
    check_theorems,
    closed_region,
    direction_switches,
    generate_preset,
    k_ring,
    neighbors,
    preset_names,
    random_room,
    rasterize_dims,
    reduce_trajectory,
    reduce_up_to,
    region_overlay,
    step_distance,
    train,
    wall_follow,
)

__all__ = [
    "Algo",
    "ExplorationStrategy",
    "HexMap",
    "MapParseError",
    "NavEnv",
    "NavError",
    "Path",
    "QTable",
    "RegionMask",
    "RurlConfig",
    "Schedule",
    "StrategyKind",
    "TheoremReport",
    "Trajectory",
    "TrainResult",
    "aco",
    "astar",
    "bfs_shortest",
    "cell_center",
    "check_theorems",
    "closed_region",
    "direction_switches",
    "generate_preset",
    "k_ring",
    "neighbors",
    "preset_names",
    "random_room",
    "rasterize_dims",
    "reduce_trajectory",
    "reduce_up_to",
    "region_overlay",
    "step_distance",
    "train",
    "wall_follow",
]
