"""Discrete-event warehouse bookkeeping used as the ground-truth cost model.

This walks the horizon step by step with explicit stock lots and backorder
records: each forecast quantity arrives as a delivery (first filling open
backorders, oldest first, then shelved as a lot), each demand quantity drains
the oldest stock first and queues the shortfall as a backorder. At the end of
every step each open lot or backorder is charged weight * quantity * age.

It is intentionally a separate code path from the metric evaluators in
:mod:`demandeval.spec` (no prefix sums, no netting aggregates) so the
experiment suite can use it as an independent oracle for what a forecast
error actually costs.
"""

from __future__ import annotations

from collections import deque

from .series import EvaluationPair
from .spec import DEFAULT_PARAMS, SpecParams


def stock_cost(pair: EvaluationPair, params: SpecParams = DEFAULT_PARAMS) -> float:
    """Average per-period cost of running the notional warehouse.

    ``params.alpha1`` prices one backordered SKU per period of age,
    ``params.alpha2`` one shelved SKU per period of age.
    """
    y = pair.actual.values.tolist()
    f = pair.forecast.values.tolist()
    n = len(y)
    a1, a2 = params.alpha1, params.alpha2

    lots: deque[list[float]] = deque()  # [arrival_step, qty] on the shelf
    backorders: deque[list[float]] = deque()  # [order_step, qty] owed

    total = 0.0
    for step in range(1, n + 1):
        arriving = f[step - 1]
        while arriving > 0.0 and backorders:
            oldest = backorders[0]
            filled = oldest[1] if oldest[1] <= arriving else arriving
            oldest[1] -= filled
            arriving -= filled
            if oldest[1] <= 0.0:
                backorders.popleft()
        if arriving > 0.0:
            lots.append([step, arriving])

        leaving = y[step - 1]
        while leaving > 0.0 and lots:
            oldest = lots[0]
            taken = oldest[1] if oldest[1] <= leaving else leaving
            oldest[1] -= taken
            leaving -= taken
            if oldest[1] <= 0.0:
                lots.popleft()
        if leaving > 0.0:
            backorders.append([step, leaving])

        for arrival_step, qty in lots:
            total += a2 * qty * (step - arrival_step + 1)
        for order_step, qty in backorders:
            total += a1 * qty * (step - order_step + 1)
    return total / n
