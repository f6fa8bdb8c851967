"""Benchmark Monte Carlo bias/MSE values for the default study grid at
10,000 iterations, used as reproduction targets by the acceptance suite.

Keys: (size config, p) -> estimator -> value.
"""

SIZE_CONFIGS = ((1, 1), (2, 3), (5, 5), (10, 10))
P_GRID = (0.1, 0.3, 0.5, 0.7, 0.9)

REFERENCE_BIAS = {
    ((1, 1), 0.1): {"p_b": -0.01768, "p_mvu": -0.00060, "p_ml": 0.06464},
    ((2, 3), 0.1): {"p_b": -0.00301, "p_mvu": 0.00005, "p_ml": 0.02124},
    ((5, 5), 0.1): {"p_b": -0.00122, "p_mvu": 0.00000, "p_ml": 0.00975},
    ((10, 10), 0.1): {"p_b": -0.00061, "p_mvu": -0.00006, "p_ml": 0.00462},
    ((1, 1), 0.3): {"p_b": -0.09153, "p_mvu": 0.00176, "p_ml": 0.11693},
    ((2, 3), 0.3): {"p_b": -0.02461, "p_mvu": -0.00044, "p_ml": 0.04424},
    ((5, 5), 0.3): {"p_b": -0.00917, "p_mvu": 0.00133, "p_ml": 0.02314},
    ((10, 10), 0.3): {"p_b": -0.00492, "p_mvu": -0.00008, "p_ml": 0.01062},
    ((1, 1), 0.5): {"p_b": -0.19120, "p_mvu": 0.00481, "p_ml": 0.11759},
    ((2, 3), 0.5): {"p_b": -0.06032, "p_mvu": 0.00051, "p_ml": 0.04960},
    ((5, 5), 0.5): {"p_b": -0.02628, "p_mvu": 0.00144, "p_ml": 0.02636},
    ((10, 10), 0.5): {"p_b": -0.01309, "p_mvu": 0.00004, "p_ml": 0.01254},
    ((1, 1), 0.7): {"p_b": -0.30864, "p_mvu": 0.00017, "p_ml": 0.08272},
    ((2, 3), 0.7): {"p_b": -0.11016, "p_mvu": -0.00120, "p_ml": 0.03731},
    ((5, 5), 0.7): {"p_b": -0.05098, "p_mvu": 0.00107, "p_ml": 0.02114},
    ((10, 10), 0.7): {"p_b": -0.02629, "p_mvu": -0.00114, "p_ml": 0.00917},
    ((1, 1), 0.9): {"p_b": -0.43420, "p_mvu": -0.00005, "p_ml": 0.03160},
    ((2, 3), 0.9): {"p_b": -0.16783, "p_mvu": -0.00030, "p_ml": 0.01521},
    ((5, 5), 0.9): {"p_b": -0.08233, "p_mvu": 0.00023, "p_ml": 0.00852},
    ((10, 10), 0.9): {"p_b": -0.04134, "p_mvu": -0.00049, "p_ml": 0.00385},
}

REFERENCE_MSE = {
    ((1, 1), 0.1): {"p_b": 0.00579, "p_mvu": 0.01527, "p_ml": 0.02609},
    ((2, 3), 0.1): {"p_b": 0.00236, "p_mvu": 0.00274, "p_ml": 0.00412},
    ((5, 5), 0.1): {"p_b": 0.00105, "p_mvu": 0.00111, "p_ml": 0.00140},
    ((10, 10), 0.1): {"p_b": 0.00050, "p_mvu": 0.00052, "p_ml": 0.00058},
    ((1, 1), 0.3): {"p_b": 0.02317, "p_mvu": 0.06487, "p_ml": 0.07284},
    ((2, 3), 0.3): {"p_b": 0.01242, "p_mvu": 0.01706, "p_ml": 0.02041},
    ((5, 5), 0.3): {"p_b": 0.00642, "p_mvu": 0.00737, "p_ml": 0.00836},
    ((10, 10), 0.3): {"p_b": 0.00320, "p_mvu": 0.00340, "p_ml": 0.00363},
    ((1, 1), 0.5): {"p_b": 0.05345, "p_mvu": 0.09775, "p_ml": 0.08140},
    ((2, 3), 0.5): {"p_b": 0.02156, "p_mvu": 0.03027, "p_ml": 0.03047},
    ((5, 5), 0.5): {"p_b": 0.01133, "p_mvu": 0.01341, "p_ml": 0.01383},
    ((10, 10), 0.5): {"p_b": 0.00588, "p_mvu": 0.00636, "p_ml": 0.00649},
    ((1, 1), 0.7): {"p_b": 0.10844, "p_mvu": 0.09309, "p_ml": 0.05957},
    ((2, 3), 0.7): {"p_b": 0.02922, "p_mvu": 0.03281, "p_ml": 0.02808},
    ((5, 5), 0.7): {"p_b": 0.01413, "p_mvu": 0.01564, "p_ml": 0.01468},
    ((10, 10), 0.7): {"p_b": 0.00724, "p_mvu": 0.00757, "p_ml": 0.00734},
    ((1, 1), 0.9): {"p_b": 0.19371, "p_mvu": 0.04339, "p_ml": 0.02172},
    ((2, 3), 0.9): {"p_b": 0.03597, "p_mvu": 0.01671, "p_ml": 0.01242},
    ((5, 5), 0.9): {"p_b": 0.01256, "p_mvu": 0.00837, "p_ml": 0.00721},
    ((10, 10), 0.9): {"p_b": 0.00512, "p_mvu": 0.00409, "p_ml": 0.00379},
}
