"""labelflight: circular label layouts with flying-label guidance.

A headless engine for locating named objects in wide scenes: labels are
clustered by initial letter on a ring, unfolded into sorted-and-orientated
concentric circles, picked by gaze movement, and flown back to their anchor
objects to lead the user's view there.
"""

from .config import DEFAULT_CONFIG, EngineConfig
from .conditions import MethodCondition, layout_for
from .geometry import (
    BehindView,
    DegenerateVector,
    GazeTrace,
    ViewState,
    angular_distance,
    angular_position,
    fit_gaze_direction,
    project_to_plane,
    radian_of,
    world_to_screen,
)
from .guidance import (
    DegenerateFlight,
    FlightState,
    GuidanceState,
    Trajectory,
    eval_trajectory,
    make_trajectory,
    normalized_alignment,
    prune_invalid,
    select_candidates,
    step_guidance,
    update_speed,
)
from .interaction import (
    ButtonPress,
    Cancel,
    Confirm,
    DwellState,
    GazeSample,
    Phase,
    PipelineSession,
    dwell_update,
    step_pipeline,
)
from .layout import (
    CircleLayout,
    EmptyLabelSet,
    FirstLevelLayout,
    Label,
    MultiCircleLayout,
    RadianRange,
    UnresolvedAnchor,
    build_first_level,
    build_second_level,
    init_label_attrs,
    insert_label,
    max_sorted_subseq,
    range_width,
    relax,
)
from .scenes import Scene, SceneObject, generate_scene, labels_for, load_scene, save_scene
from .simulate import (
    AgentConfig,
    CompareConfig,
    FollowerAgent,
    Report,
    TrialLimits,
    TrialMetrics,
    agent_step,
    compare_methods,
    run_trial,
)

__version__ = "0.1.0"
