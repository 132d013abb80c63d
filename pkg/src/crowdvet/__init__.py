"""Crowd-vetted bug bounty process engine and incentive simulator.

The package models three bug bounty process variants side by side: hackers
reporting directly to a vendor, reporting through a commercial platform, and
the crowd-vetted flow in which vetted hackers verify each other's reports for
a fee. A deterministic, event-sourced simulation harness drives configurable
hacker populations against those variants and derives comparable metrics
(signal-to-noise, vendor overhead, reward spend, coverage, engagement).
"""

__version__ = "0.1.0"
