# Marks the tests directory so pytest puts it on sys.path (helpers, oracle).
