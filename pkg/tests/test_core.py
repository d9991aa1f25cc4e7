import pytest

from lipgo import (
    METHOD_LABELS,
    ConfigurationError,
    Estimator,
    MethodConfig,
    Problem,
    Scheme,
    Selector,
    make_method,
    method_from_label,
    validate_problem,
)
from lipgo.core import parse_label


def test_labels_cover_twelve_methods():
    labels = {
        MethodConfig(scheme=s, estimator=e, selector=sel).label
        for s in Scheme
        for e in Estimator
        for sel in Selector
    }
    assert labels == set(METHOD_LABELS)
    assert len(labels) == 12


@pytest.mark.parametrize(
    "scheme, estimator, selector, label",
    [
        (Scheme.GS, Estimator.KNOWN_CONSTANT, Selector.MIN_CHARACTERISTIC, "PKC"),
        (Scheme.GS, Estimator.LOCAL_TUNING, Selector.LOCAL_IMPROVEMENT, "LT_LI"),
        (Scheme.GS_D, Estimator.LOCAL_TUNING, Selector.LOCAL_IMPROVEMENT, "DLT_LI"),
        (Scheme.GS_D, Estimator.GLOBAL_ESTIMATE, Selector.MIN_CHARACTERISTIC, "DGE"),
    ],
)
def test_make_method_label(scheme, estimator, selector, label):
    config = MethodConfig(scheme=scheme, estimator=estimator, selector=selector)
    assert make_method(config).label == label
    assert parse_label(label) == (scheme, estimator, selector)


def test_r_must_exceed_one_for_adaptive_estimators():
    with pytest.raises(ConfigurationError):
        MethodConfig(scheme=Scheme.GS, estimator=Estimator.GLOBAL_ESTIMATE, r=1.0)
    # ignored for the known constant
    MethodConfig(estimator=Estimator.KNOWN_CONSTANT, r=1.0)


@pytest.mark.parametrize("field, value", [("xi", 0.0), ("eps", -1.0), ("delta", 0.0), ("max_trials", 1)])
def test_invalid_parameters(field, value):
    with pytest.raises(ConfigurationError):
        MethodConfig(**{field: value})


def test_unknown_label():
    with pytest.raises(ConfigurationError):
        method_from_label("XYZ")


def test_problem_invariants():
    with pytest.raises(ConfigurationError):
        Problem("bad", 1.0, 1.0, f=abs)
    with pytest.raises(ConfigurationError):
        Problem("bad", 0.0, 1.0, f=abs, known_L=0.0)


def test_validate_problem(quadratic):
    no_derivative = Problem("nod", 0.0, 1.0, f=lambda x: x)
    dlt = method_from_label("DLT").config
    assert validate_problem(no_derivative, dlt) == "derivative required"
    assert validate_problem(no_derivative, method_from_label("PKC").config) == "known constant required"
    assert validate_problem(quadratic, method_from_label("GE").config) is None


def test_rejected_run_has_no_trials():
    result = method_from_label("DKC").solve(Problem("nod", 0.0, 1.0, f=lambda x: x))
    assert result.status.value == "Rejected"
    assert result.n_trials == 0
    assert result.reason == "derivative required"


def test_effective_accuracy():
    config = MethodConfig(eps=1e-4)
    assert config.effective_eps(-5, 5) == pytest.approx(1e-3)
    assert config.effective_delta(-5, 5) == config.effective_eps(-5, 5)
    absolute = MethodConfig(eps=1e-4, eps_relative=False, delta=1e-2)
    assert absolute.effective_eps(-5, 5) == 1e-4
    assert absolute.effective_delta(-5, 5) == 1e-2
