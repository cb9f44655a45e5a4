import pytest

from jamtexter.config import DEFAULT_COEFFICIENTS, DEFAULT_COST_TABLE, RunConfig
from jamtexter.econ import (
    LOSSES_CSV_HEADER,
    Coefficients,
    CostTable,
    aggregate_losses,
    lookup_cost,
    losses_csv_rows,
    message_loss,
    probability_decile,
)
from jamtexter.textsim import TrialOutcome, run_trials


def outcome(mode="baseline", p_ic=0.3, delivered=0, attempt="interception", trial=0):
    return TrialOutcome(
        trial_id=trial, attempt_type=attempt, mode=mode, p_ic=p_ic, delivered=delivered
    )


class TestCostTable:
    def test_default_is_valid(self):
        assert DEFAULT_COST_TABLE.breakpoints[0] == (0.1, 10.0)
        assert DEFAULT_COST_TABLE.breakpoints[-1] == (0.9, 0.1)

    def test_rejects_non_monotone(self):
        points = list(DEFAULT_COST_TABLE.breakpoints)
        points[3] = (0.4, 50.0)
        with pytest.raises(ValueError, match="non-increasing"):
            CostTable(breakpoints=tuple(points))

    def test_rejects_wrong_deciles(self):
        with pytest.raises(ValueError, match="deciles"):
            CostTable(breakpoints=((0.05, 10.0),))


class TestLookup:
    @pytest.mark.parametrize(
        "p,expected",
        [
            (0.3, 5.1),
            (0.05, 10.0),  # low tail collapses into the 0.1 bucket
            (0.97, 0.1),   # high tail collapses into the 0.9 bucket
            (0.25, 5.1),   # half away from zero -> 0.3 bucket
            (0.45, 1.1),   # -> 0.5 bucket
            (0.0, 10.0),
            (1.0, 0.1),
        ],
    )
    def test_examples(self, p, expected):
        assert lookup_cost(DEFAULT_COST_TABLE, p) == expected

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            lookup_cost(DEFAULT_COST_TABLE, 1.5)

    def test_decile_boundaries_survive_float_noise(self):
        assert probability_decile(0.45 - 0.1) == 4  # 0.35 -> 0.4 bucket
        assert probability_decile(0.45 + 0.45 - 0.4) == 5  # 0.5 -> itself

    def test_monotone_over_dense_scan(self):
        previous = None
        for i in range(0, 1001):
            cost = lookup_cost(DEFAULT_COST_TABLE, i / 1000)
            if previous is not None:
                assert cost <= previous
            previous = cost


class TestMessageLoss:
    def test_delivered_costs_nothing(self):
        o = outcome(delivered=1, p_ic=0.9)
        assert message_loss(o, DEFAULT_COEFFICIENTS, "military", DEFAULT_COST_TABLE) == 0.0

    def test_baseline_military(self):
        o = outcome(mode="baseline", p_ic=0.3)
        loss = message_loss(o, DEFAULT_COEFFICIENTS, "military", DEFAULT_COST_TABLE)
        assert loss == pytest.approx(3 * 8 * 5.1)  # 122.4

    def test_full_private(self):
        o = outcome(mode="full", p_ic=0.3)
        loss = message_loss(o, DEFAULT_COEFFICIENTS, "private", DEFAULT_COST_TABLE)
        assert loss == pytest.approx(1 * 2 * 5.1)  # 10.2

    def test_unknown_mode_or_sector(self):
        with pytest.raises(ValueError, match="alpha"):
            message_loss(
                outcome(mode="baseline"),
                Coefficients(alpha={"full": 1.0}, beta={"private": 2.0}),
                "private",
                DEFAULT_COST_TABLE,
            )
        with pytest.raises(ValueError, match="beta"):
            message_loss(outcome(), DEFAULT_COEFFICIENTS, "exotic", DEFAULT_COST_TABLE)


class TestAggregate:
    def test_rejects_empty(self):
        with pytest.raises(ValueError):
            aggregate_losses([], DEFAULT_COEFFICIENTS, DEFAULT_COST_TABLE)

    def test_all_delivered_is_free(self):
        outcomes = [outcome(delivered=1, p_ic=0.8, trial=i) for i in range(10)]
        records = aggregate_losses(outcomes, DEFAULT_COEFFICIENTS, DEFAULT_COST_TABLE)
        assert all(r.total_loss_usd == 0.0 for r in records)
        assert all(r.delivered_count > 0 and r.failed_count == 0 for r in records)

    def test_beta_linearity(self):
        outcomes = [outcome(p_ic=p, trial=i) for i, p in enumerate([0.1, 0.2, 0.3, 0.4])]
        records = aggregate_losses(outcomes, DEFAULT_COEFFICIENTS, DEFAULT_COST_TABLE)
        by_sector = {r.sector: r.total_loss_usd for r in records if r.attempt_type == "interception"}
        base = by_sector["private"] / 2.0
        for sector, beta in DEFAULT_COEFFICIENTS.beta.items():
            assert by_sector[sector] == pytest.approx(base * beta, rel=1e-12)

    def test_alpha_linearity_on_fixed_failure_set(self):
        p_values = [0.1, 0.25, 0.4, 0.45]
        losses = {}
        for mode in ("baseline", "partial", "full"):
            outcomes = [outcome(mode=mode, p_ic=p, trial=i) for i, p in enumerate(p_values)]
            records = aggregate_losses(outcomes, DEFAULT_COEFFICIENTS, DEFAULT_COST_TABLE)
            losses[mode] = sum(
                r.total_loss_usd for r in records if r.attempt_type == "interception"
            )
        assert losses["baseline"] == pytest.approx(3 * losses["full"], rel=1e-12)
        assert losses["partial"] == pytest.approx(2 * losses["full"], rel=1e-12)

    def test_sector_ordering(self):
        outcomes = [outcome(p_ic=p, trial=i) for i, p in enumerate([0.1, 0.3])]
        records = aggregate_losses(outcomes, DEFAULT_COEFFICIENTS, DEFAULT_COST_TABLE)
        by_sector = {r.sector: r.total_loss_usd for r in records if r.attempt_type == "total"}
        assert (
            by_sector["military"]
            >= by_sector["government"]
            >= by_sector["commercial"]
            >= by_sector["private"]
            > 0.0
        )

    def test_pipeline_shape_and_counts(self):
        config = RunConfig()
        outcomes = run_trials(
            config.modes, config.network_sets, config.interceptor, 100, 42
        )
        records = aggregate_losses(outcomes, config.coefficients, config.cost_table)
        assert len(records) == 3 * 4 * 3  # attempt rows x sectors x modes
        for r in records:
            expected = 200 if r.attempt_type == "total" else 100
            assert r.failed_count + r.delivered_count == expected
            assert r.total_loss_usd >= 0.0
            if r.failed_count + r.delivered_count:
                assert r.mean_loss_per_text_usd == pytest.approx(
                    r.total_loss_usd / (r.failed_count + r.delivered_count)
                )

    def test_total_rows_sum_attempts(self):
        config = RunConfig()
        outcomes = run_trials(config.modes, config.network_sets, config.interceptor, 50, 7)
        records = aggregate_losses(outcomes, config.coefficients, config.cost_table)
        index = {(r.attempt_type, r.mode, r.sector): r for r in records}
        for mode in ("baseline", "partial", "full"):
            for sector in config.coefficients.beta:
                total = index[("total", mode, sector)]
                parts = [index[("interception", mode, sector)], index[("blocking", mode, sector)]]
                assert total.total_loss_usd == pytest.approx(
                    sum(p.total_loss_usd for p in parts)
                )
                assert total.failed_count == sum(p.failed_count for p in parts)


class TestLossesCsv:
    def test_header_and_two_decimal_dollars(self):
        outcomes = [outcome(p_ic=0.3)]
        records = aggregate_losses(outcomes, DEFAULT_COEFFICIENTS, DEFAULT_COST_TABLE)
        rows = losses_csv_rows(records)
        assert rows[0] == LOSSES_CSV_HEADER == (
            "attempt_type,mode,sector,failed_count,delivered_count,"
            "total_loss_usd,mean_loss_per_text_usd"
        )
        for line in rows[1:]:
            fields = line.split(",")
            assert len(fields) == 7
            assert len(fields[5].split(".")[1]) == 2
            assert len(fields[6].split(".")[1]) == 2
