import pytest

from uawork import Budget, ConfigError, default_config, load_config


def test_packaged_defaults():
    config = default_config()
    assert config.get("budget", "max_insertions") == 10 ** 7
    assert config.get("budget", "max_op_applications") == 10 ** 9
    assert config.get("congruence_lattice", "max_size") == 64
    assert config.get("all_subuniverses", "max_size") == 12
    assert config.get("retract", "max_cls") == 3
    assert Budget.from_config(config) == Budget(10 ** 7, 10 ** 9)


def test_keyword_overrides():
    config = load_config(budget__max_insertions=5)
    assert config.get("budget", "max_insertions") == 5
    assert config.get("budget", "max_op_applications") == 10 ** 9
    with pytest.raises(ConfigError):
        load_config(budget__max_widgets=5)
    with pytest.raises(ConfigError):
        load_config(budget=5)


def test_user_file(tmp_path):
    path = tmp_path / "user.yaml"
    path.write_text("retract:\n  max_cls: 2\n")
    config = load_config(str(path))
    assert config.get("retract", "max_cls") == 2
    assert config.get("retract", "homomorphism_check_limit") == 1000000

    path.write_text("retract:\n  colour: blue\n")
    with pytest.raises(ConfigError):
        load_config(str(path))
    path.write_text("- 1\n- 2\n")
    with pytest.raises(ConfigError):
        load_config(str(path))
    with pytest.raises(ConfigError):
        load_config(str(tmp_path / "missing.yaml"))


def test_missing_key():
    with pytest.raises(ConfigError):
        default_config().get("budget", "max_widgets")


def test_budget_override():
    budget = Budget(10, 20)
    assert budget.override(max_insertions=3) == Budget(3, 20)
    assert budget.override() == budget
    with pytest.raises(ValueError):
        Budget(0, 1)
    with pytest.raises(ValueError):
        budget.override(max_insertions=0)
    with pytest.raises(ValueError):
        budget.override(max_op_applications=0)
