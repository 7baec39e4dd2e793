"""Stitches uncertain short-term trajectory predictions onto lane goal paths."""

from ustitch._core import (
    Cov2,
    GaussianWaypoint,
    NotPositiveDefiniteError,
    OrientedBox,
    Point2,
    Polyline,
    PredictedTrajectory,
    Projection,
    ProjectionMetric,
    SolutionPath,
    StitchParams,
    breakaway_horizon,
    compatibility_score,
    extend_path,
    heading_at,
    lambda_schedule,
    mahalanobis_distance,
    mahalanobis_project,
    make_footprints,
    point_at,
    project_point,
    resample,
    solve_waypoint,
    solve_waypoint_trace,
    stitch,
    stitch_prefix,
    waypoint_objective,
)

__all__ = [
    "Cov2",
    "GaussianWaypoint",
    "NotPositiveDefiniteError",
    "OrientedBox",
    "Point2",
    "Polyline",
    "PredictedTrajectory",
    "Projection",
    "ProjectionMetric",
    "SolutionPath",
    "StitchParams",
    "breakaway_horizon",
    "compatibility_score",
    "extend_path",
    "heading_at",
    "lambda_schedule",
    "mahalanobis_distance",
    "mahalanobis_project",
    "make_footprints",
    "point_at",
    "project_point",
    "resample",
    "solve_waypoint",
    "solve_waypoint_trace",
    "stitch",
    "stitch_prefix",
    "waypoint_objective",
]
