from hypothesis import settings

# numeric properties have uneven per-example cost; wall-clock deadlines only add flakiness
settings.register_profile("default", deadline=None)
settings.load_profile("default")
