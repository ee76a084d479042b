import hypothesis

# Derandomized so CI failures replay exactly; no deadline because the exact
# rational transport path has a long tail on dense examples.
hypothesis.settings.register_profile(
    "suite",
    derandomize=True,
    max_examples=40,
    deadline=None,
)
hypothesis.settings.load_profile("suite")
