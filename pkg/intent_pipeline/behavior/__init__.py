from .events import ACTION_ORDER, ActionType, BehaviorEvent, BehaviorWindow, WindowPolicy
from .store import EventStore, UserStores, append_event, current_window
from .tags import TagCatalog, TagDistribution, TagSet, map_to_tags
