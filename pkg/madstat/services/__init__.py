"""
Services Package

Computations on the domain models. Each module owns one concern:

- mad_core: sample and oracle MAD, dispersion function, sign balance
- expansion: exact finite-sample decomposition and remainder decay
- laws: population facts of generator laws (mean, theta, sign balance)
- limit_laws: Gaussian functional and stable limit models and samplers
- longrun: long-run covariance of the paired deviations
- simulate: generators and the Monte Carlo study harness
- gof: KS distance, quantile bands, moment summaries
- intervals: regime-aware confidence intervals for theta
- verification: study versus limit-law comparison (mc-verify)
- data_io: CSV ingestion and JSON/CSV reports
- errors: exception hierarchy
"""
