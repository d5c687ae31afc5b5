"""numlink: sigmoid link-reception modeling, network-utility-maximizing
power and mobility control, and Monte Carlo packet-reception simulation."""

from .geometry import (
    ChannelParams,
    LinkPowers,
    Node,
    Role,
    channel_gain,
    link_powers,
    pairwise_distance,
    sinr_db,
)
from .reception import (
    FitResult,
    FitSample,
    SigmoidParams,
    beta_prime,
    fit_sigmoid,
    generate_fit_samples,
    link_prr_from_powers,
    link_prr_from_sinr,
    load_fit_samples,
    prr_from_powers,
)
from .utility import (
    Scenario,
    SweepResult,
    UtilityGradient,
    brute_force_optimum,
    is_unimodal,
    link_model_prrs,
    network_utility,
    sweep_power_ratio,
    sweep_position,
    two_tx_balance_residual,
    utility_gradient,
)
from .controller import (
    ControlConstraints,
    ControllerOptions,
    Trajectory,
    projected_step,
    run,
    trajectory_to_csv,
)
from .simulator import (
    PrrReport,
    PrrSeries,
    network_prr,
    report_to_csv,
    series_to_csv,
    simulate,
    smooth_prr,
)
from .config import (
    LoadedConfig,
    ScenarioParseError,
    ScenarioValidationError,
    SimulationSettings,
    dbm_to_watts,
    db_to_linear,
    parse_scenario,
    watts_to_dbm,
)

__version__ = "0.1.0"
