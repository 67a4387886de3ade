"""Synthetic navigation-graph and instruction dataset toolkit."""

from navgen._core import (  # noqa: F401
    AgentRun,
    BleuScore,
    ConfigError,
    DataError,
    EdgeOrigin,
    Episode,
    EvalResult,
    FloorplanSpec,
    GraphQualityReport,
    InstructionRecord,
    Manifest,
    NavEdge,
    NavGraph,
    ObjectAnnotation,
    OccupancyGrid,
    PipelineConfig,
    Point2D,
    SceneOutcome,
    Split,
    Trajectory,
    TrajectoryStyle,
    Viewpoint,
    aggregate,
    bleu4,
    build_rough_graph,
    cluster_viewpoints,
    enumerate_object_paths,
    enumerate_r2r_paths,
    evaluate_run,
    generate_floorplan,
    generate_instruction,
    geodesic_distance,
    line_traversable,
    navigable_area,
    noisy_follower,
    oracle_follower,
    pipeline_run,
    place_objects,
    quality_report,
    read_shard,
    refine_graph,
    render_svg,
    sample_navigable_points,
    shortest_path,
)

__version__ = "0.1.0"
