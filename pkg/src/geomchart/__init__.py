"""g and h control charts for shifted geometric event-count data with
unbalanced subgroups: correct point estimation, exact moments of the
estimators, chart-limit construction and a reproducible simulation engine.
"""

from .charts import (
    AMERICAN_STANDARD,
    BRITISH_STANDARD,
    ChartConfig,
    ChartLimits,
    ChartReport,
    classify,
    g_limits,
    h_limits,
    limits_known,
)
from .estimators import (
    ESTIMATOR_NAMES,
    EstimateReport,
    StudyData,
    estimate_report,
    mu_hat,
    p_b,
    p_ml,
    p_mvu,
    rao_blackwell_eta,
    sigma2_ml,
    sigma2_mvu,
)
from .geom import (
    GeometricModel,
    NegBinModel,
    geom_moments,
    geom_pmf,
    nbinom_pmf,
    sample_geometric,
)
from .moments import (
    MomentReport,
    bias_p_b,
    bias_p_ml,
    m2_p_b,
    m2_p_ml,
    m2_p_mvu,
    mean_p_b,
    mean_p_ml,
    moment_report,
    theory_curves,
    var_p_mvu,
)
from .series import (
    DEFAULT_CONTROL,
    NonConvergenceError,
    SeriesControl,
    hyp2f1,
    hyp3f2,
    inc_beta,
    pochhammer,
)
from .simulate import (
    DEFAULT_P_GRID,
    DEFAULT_SEED,
    DEFAULT_SIZES,
    SimConfig,
    SimResult,
    cell_seed,
    compare_theory,
    run_cell,
    run_table,
)

__version__ = "0.1.0"
