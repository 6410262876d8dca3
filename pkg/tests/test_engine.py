from dataclasses import replace

import pytest

from src.models import Algorithm, ConfigError, Role, SimConfig, assert_unique_ids
from src.services import SERIES_COLUMNS, MessageKind, Simulation, run

from conftest import NO_DEATH_RATES


def test_null_run(small_cfg):
    report = run(replace(small_cfg, duration=0))
    assert all(values == [] for values in report.series.values())
    assert report.total_messages == 0
    assert report.total_reaffiliations == 0
    assert report.final_energy_variance == 0.0
    assert report.lidar_rounds == 0


def test_unvalidated_config_is_rejected():
    with pytest.raises(ConfigError):
        Simulation(SimConfig(w1=0.7, w2=0.7))


@pytest.mark.parametrize("algorithm", [a.value for a in Algorithm])
def test_same_seed_same_report(small_cfg, algorithm):
    cfg = replace(small_cfg, algorithm=algorithm)
    assert run(cfg).to_json() == run(cfg).to_json()


def test_different_seeds_differ(small_cfg):
    assert run(small_cfg).to_json() != run(replace(small_cfg, seed=small_cfg.seed + 1)).to_json()


@pytest.mark.parametrize("algorithm", [a.value for a in Algorithm])
def test_series_shape_and_accounting(small_cfg, algorithm):
    report = run(replace(small_cfg, algorithm=algorithm))
    frame = report.to_frame()
    assert list(frame.columns) == SERIES_COLUMNS
    assert frame["tick"].tolist() == list(range(1, small_cfg.duration + 1))
    message_columns = ["msgs_hello", "msgs_weight", "msgs_newid", "msgs_hpadapt"]
    assert int(frame[message_columns].to_numpy().sum()) == report.total_messages
    assert sum(report.messages_by_kind.values()) == report.total_messages
    assert int(frame["reaffiliations"].sum()) == report.total_reaffiliations
    assert report.final_energy_variance == frame["energy_var"].iloc[-1]
    assert len(report.ch_tenure) == small_cfg.n_nodes
    assert report.metadata["message_counting"].startswith("one count per transmission")


def test_snapshot_interval_decimates(small_cfg):
    report = run(replace(small_cfg, snapshot_interval=7))
    ticks = report.series["tick"]
    assert ticks[-1] == small_cfg.duration
    assert all(t % 7 == 0 for t in ticks[:-1])
    assert sum(report.series["msgs_hello"]) == report.messages_by_kind[MessageKind.HELLO.value]


def test_baselines_send_no_lidar_messages(small_cfg):
    for algorithm in ("LID", "HD", "WCA"):
        report = run(replace(small_cfg, algorithm=algorithm))
        assert report.messages_by_kind["WeightReport"] == 0
        assert report.messages_by_kind["NewIdAssign"] == 0
        assert report.messages_by_kind["HpAdapt"] == 0
        assert report.lidar_rounds == 0


def test_invariants_hold_every_tick():
    cfg = SimConfig(n_nodes=25, terrain=(400.0, 400.0), speed_max=10.0, duration=150, seed=11,
                    e_ord=0.2, e_ch_base=0.3, e_ch_per_member=0.1)
    sim = Simulation(cfg)
    sim.form_initial_clusters()
    for tick in range(1, cfg.duration + 1):
        sim.step(tick)
        assert_unique_ids(sim.nodes)
        live = {n.id: n for n in sim.nodes if n.alive}
        for node in sim.nodes:
            assert 0.0 <= node.pos[0] <= cfg.width and 0.0 <= node.pos[1] <= cfg.height
            assert node.battery >= 0.0
            assert cfg.hp_min <= node.hp_local <= cfg.hp_max
            if not node.alive:
                continue
            if node.role is Role.CH:
                assert node.cluster_of == node.id
            elif node.cluster_of is not None:
                assert live[node.cluster_of].role is Role.CH
        for view in sim.clusters:
            assert view.head in live
            assert view.members <= set(live)


def test_reassignment_permutes_the_id_pool():
    cfg = SimConfig(n_nodes=30, terrain=(400.0, 400.0), speed_max=5.0, duration=200, seed=4)
    sim = Simulation(cfg)
    report = sim.run()
    assert report.lidar_rounds > 0
    assert sorted(n.id for n in sim.nodes) == sorted(report.initial_ids)
    assert set(report.initial_ids) <= set(range(1, cfg.n_nodes + 1))


def test_larger_id_pool():
    cfg = SimConfig(n_nodes=10, id_pool=1000, duration=30, seed=2)
    sim = Simulation(cfg)
    sim.run()
    assert_unique_ids(sim.nodes)
    assert all(1 <= n.id <= 1000 for n in sim.nodes)


def test_huge_id_pool_draws_without_materialising_it():
    cfg = SimConfig(n_nodes=10, id_pool=10**10, duration=5, seed=2)
    sim = Simulation(cfg)
    sim.run()
    assert_unique_ids(sim.nodes)
    assert all(1 <= n.id <= 10**10 for n in sim.nodes)


def test_lidar_schedule_with_fixed_period():
    cfg = SimConfig(n_nodes=20, terrain=(300.0, 300.0), speed_min=0.0, speed_max=0.0, hp_min=5, hp_max=5,
                    k=5, duration=103, algorithm="LIDAR", seed=9, **NO_DEATH_RATES)
    report = run(cfg)
    assert report.lidar_rounds == cfg.duration // (cfg.k * cfg.hp_min)
    assert report.messages_by_kind["HpAdapt"] == 0


def test_static_cluster_stretches_hello_period(static_cfg):
    lidar = run(replace(static_cfg, algorithm="LIDAR"))
    lid = run(replace(static_cfg, algorithm="LID"))
    first_round = static_cfg.k * static_cfg.hp_min
    adapted = [hp for tick, hp in zip(lidar.series["tick"], lidar.series["mean_hp"]) if tick >= first_round]
    assert adapted and all(hp == static_cfg.hp_max for hp in adapted)
    assert lidar.messages_by_kind["Hello"] < lid.messages_by_kind["Hello"]
    assert lid.messages_by_kind["Hello"] == static_cfg.n_nodes * (static_cfg.duration // static_cfg.hp_min)


def test_lid_and_hd_hello_schedules_coincide(small_cfg):
    cfg = replace(small_cfg, **NO_DEATH_RATES)
    assert run(replace(cfg, algorithm="LID")).total_messages == run(replace(cfg, algorithm="HD")).total_messages


def test_lid_and_hd_hellos_coincide_until_the_first_death(small_cfg):
    cfg = replace(small_cfg, duration=600)
    lid = run(replace(cfg, algorithm="LID"))
    hd = run(replace(cfg, algorithm="HD"))
    deaths = [t for t in lid.death_tick + hd.death_tick if t is not None]
    assert deaths
    first_death = min(deaths)
    prefix = [i for i, tick in enumerate(lid.series["tick"]) if tick < first_death]
    assert prefix
    assert [lid.series["msgs_hello"][i] for i in prefix] == [hd.series["msgs_hello"][i] for i in prefix]


def test_serving_tenure_skips_memberless_heads(static_cfg):
    report = run(replace(static_cfg, algorithm="LID"))
    slot = report.initial_ids.index(min(report.initial_ids))
    assert report.serving_tenure[slot] == static_cfg.duration
    assert all(s <= c for s, c in zip(report.serving_tenure, report.ch_tenure))
    assert "serving_tenure" in report.metadata

    scattered = SimConfig(n_nodes=3, terrain=(5000.0, 5000.0), range=1.0, speed_max=0.0, duration=30,
                          seed=5, algorithm="LID", **NO_DEATH_RATES)
    lonely = run(scattered)
    assert lonely.ch_tenure == [30, 30, 30]
    assert lonely.serving_tenure == [0, 0, 0]


def test_wca_static_topology_never_reelects(static_cfg):
    report = run(replace(static_cfg, algorithm="WCA", duration=100))
    assert report.wca_reelections == 0
    assert report.messages_by_kind["Hello"] == static_cfg.n_nodes * (100 // static_cfg.hp_min)


def test_wca_reelection_costs_extra_hellos():
    cfg = SimConfig(n_nodes=25, terrain=(500.0, 500.0), speed_max=15.0, duration=200, seed=13,
                    algorithm="WCA", **NO_DEATH_RATES)
    report = run(cfg)
    baseline = run(replace(cfg, algorithm="LID"))
    assert report.wca_reelections > 0
    assert report.messages_by_kind["Hello"] > baseline.messages_by_kind["Hello"]


def test_lid_lowest_id_serves_whole_static_run(static_cfg):
    report = run(replace(static_cfg, algorithm="LID"))
    slot = report.initial_ids.index(min(report.initial_ids))
    assert report.ch_tenure[slot] == static_cfg.duration
