"""Package initialization for src."""