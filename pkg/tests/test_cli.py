import json

import pytest

from lassim.cli import main


@pytest.fixture
def scenario_file(tmp_path):
    path = tmp_path / "scenario.json"
    path.write_text(
        json.dumps(
            {
                "road_length": 2000,
                "obstacles": [
                    {"x_start": 300, "x_end": 380, "side": "right", "intrusion": 2.0}
                ],
                "taper_length": 60,
            }
        )
    )
    return str(path)


def test_validate_ok(scenario_file, capsys):
    assert main(["validate", scenario_file]) == 0
    assert "OK" in capsys.readouterr().out


def test_validate_failure(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"road_length": -5}')
    assert main(["validate", str(bad)]) == 1
    assert "error" in capsys.readouterr().err


def test_simulate_writes_telemetry_and_metrics(scenario_file, tmp_path, capsys):
    out = tmp_path / "run.csv"
    code = main(
        [
            "simulate", "--scenario", scenario_file, "--condition", "nohud",
            "--duration", "20", "--seed", "4", "--out", str(out),
        ]
    )
    assert code == 0
    metrics = json.loads(capsys.readouterr().out)
    assert set(metrics) == {"max_tbt", "time_in_caution", "time_in_critical", "critical_crossings"}
    text = out.read_text()
    assert text.startswith("# lassim telemetry 1")
    assert '"condition":"hud_off"' in text
    assert len(text.strip().splitlines()) == 3 + 20 * 50


def test_metrics_reads_telemetry(scenario_file, tmp_path, capsys):
    out = tmp_path / "run.csv"
    main(["simulate", "--scenario", scenario_file, "--duration", "10", "--out", str(out)])
    capsys.readouterr()
    assert main(["metrics", str(out)]) == 0
    metrics = json.loads(capsys.readouterr().out)
    assert metrics["max_tbt"] > 0


def test_simulate_determinism_across_invocations(scenario_file, tmp_path):
    a = tmp_path / "a.csv"
    b = tmp_path / "b.csv"
    for out in (a, b):
        main(
            ["simulate", "--scenario", scenario_file, "--duration", "15",
             "--seed", "11", "--out", str(out)]
        )
    assert a.read_bytes() == b.read_bytes()


def test_quiz_output_deterministic(scenario_file, tmp_path):
    a = tmp_path / "qa.json"
    b = tmp_path / "qb.json"
    for out in (a, b):
        code = main(
            ["quiz", "--scenario", scenario_file, "--seed", "2", "--count", "4",
             "--duration", "60", "--out", str(out)]
        )
        assert code == 0
    assert a.read_bytes() == b.read_bytes()
    doc = json.loads(a.read_text())
    assert len(doc["questions"]) == 4
    for q in doc["questions"]:
        assert len(q["options"]) == 4
        assert 0 <= q["correct_index"] <= 3


def test_stats_pipeline(tmp_path, capsys):
    items = tmp_path / "items.json"
    items.write_text(json.dumps({f"item_{i}": False for i in range(1, 10)}))
    rows = [
        "participant_id,condition," + ",".join(f"item_{i}" for i in range(1, 10)),
        "p1,hud,2,2,2,2,2,2,2,2,2",
        "p1,nohud,1,1,1,1,1,1,1,1,1",
        "p2,hud,1,2,1,2,1,2,1,2,1",
        "p2,nohud,1,1,1,1,1,0,1,1,1",
    ]
    responses = tmp_path / "responses.csv"
    responses.write_text("\n".join(rows) + "\n")
    out = tmp_path / "report.csv"
    code = main(
        ["stats", "--responses", str(responses), "--items", str(items), "--out", str(out)]
    )
    assert code == 0
    lines = out.read_text().strip().splitlines()
    assert lines[0] == "scale,mean_hud,sd_hud,mean_nohud,sd_nohud,t,df,p"
    assert lines[1].startswith("usefulness,")
    assert lines[2].startswith("satisfaction,")


def test_stats_table_to_stdout(tmp_path, capsys):
    items = tmp_path / "items.json"
    items.write_text(json.dumps({f"item_{i}": False for i in range(1, 10)}))
    rows = [
        "participant_id,condition," + ",".join(f"item_{i}" for i in range(1, 10)),
        "p1,hud,2,1,2,1,2,1,2,1,2",
        "p1,nohud,0,1,0,1,0,1,0,1,0",
        "p2,hud,1,1,1,1,1,1,1,1,1",
        "p2,nohud,0,0,0,0,1,0,0,0,0",
    ]
    responses = tmp_path / "responses.csv"
    responses.write_text("\n".join(rows) + "\n")
    assert main(["stats", "--responses", str(responses), "--items", str(items)]) == 0
    out = capsys.readouterr().out
    assert "usefulness" in out and "satisfaction" in out


def test_simulate_from_full_config_document(tmp_path, capsys):
    from lassim.driver import DriverParams
    from lassim.scenario import straight_road
    from lassim.session import SessionConfig, config_to_dict

    config = SessionConfig(
        scenario=straight_road(1000.0),
        condition="hud_off",
        driver=DriverParams(target_y=-1.8, seed=9),
        seed=9,
    )
    config_path = tmp_path / "session.json"
    config_path.write_text(json.dumps(config_to_dict(config)))
    out = tmp_path / "run.csv"
    assert main(["simulate", "--config", str(config_path), "--duration", "5", "--out", str(out)]) == 0
    text = out.read_text()
    assert '"seed":9' in text
    assert len(text.strip().splitlines()) == 3 + 5 * 50


def test_shipped_scenarios_validate(capsys):
    from pathlib import Path

    scenarios = Path(__file__).parent.parent / "scenarios"
    assert main(["validate", str(scenarios / "straight.json")]) == 0
    assert main(["validate", str(scenarios / "obstacle_course.json")]) == 0
    capsys.readouterr()


def test_missing_file_is_an_error(capsys):
    assert main(["validate", "/nonexistent/scenario.json"]) == 1
    assert "error" in capsys.readouterr().err
