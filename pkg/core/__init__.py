# Core package: spectral numerics, models, iteration and run orchestration
