import pytest

from airpick.config import (
    ConfigError,
    config_from_dict,
    config_to_dict,
    load_config,
    parse_config,
)
from airpick.types import SimConfig


def test_parse_overrides_and_defaults():
    cfg = parse_config("""
# flight tuning
hand_scale = 2.5
tick_rate = 100    # faster loop for tests
object_x = -1.5
""")
    assert cfg.hand_scale == 2.5
    assert cfg.tick_rate == 100.0
    assert cfg.object_x == -1.5
    assert cfg.tau == 0.5  # untouched default


def test_empty_text_gives_defaults():
    assert parse_config("") == SimConfig()


def test_unknown_key_rejected():
    with pytest.raises(ConfigError, match="unknown config key 'warp_speed'"):
        parse_config("warp_speed = 9")


def test_duplicate_key_rejected():
    with pytest.raises(ConfigError, match="duplicate"):
        parse_config("tau = 0.5\ntau = 0.6")


def test_garbled_line_reports_location():
    with pytest.raises(ConfigError, match="flight.cfg:2"):
        parse_config("tau = 0.5\nnonsense here", source="flight.cfg")


def test_unparseable_value():
    with pytest.raises(ConfigError, match="cannot parse"):
        parse_config("tau = fast")


def test_semantic_validation_applies():
    with pytest.raises(ConfigError, match="clasp"):
        parse_config("clasp_on = 0.2")  # now below clasp_off


def test_int_fields_stay_int():
    cfg = parse_config("seed = 7\ninput_delay_ticks = 3")
    assert cfg.seed == 7 and isinstance(cfg.seed, int)
    assert cfg.input_delay_ticks == 3 and isinstance(cfg.input_delay_ticks, int)


def test_load_config_roundtrip(tmp_path):
    p = tmp_path / "a.cfg"
    p.write_text("v_max = 2.0\n")
    assert load_config(p).v_max == 2.0


def test_dict_roundtrip_exact():
    cfg = SimConfig(hand_scale=1.7, seed=42)
    assert config_from_dict(config_to_dict(cfg)) == cfg


def test_dict_rejects_stray_keys():
    with pytest.raises(ConfigError, match="unknown config keys"):
        config_from_dict({"not_a_field": 1})
