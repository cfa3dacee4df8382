from .execution_tracking import execution_tracker
