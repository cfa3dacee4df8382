from .extraction import BehaviorFeatures, FeatureConfig, extract_features
