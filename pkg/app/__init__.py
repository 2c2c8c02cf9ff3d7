"""promolab：标准杨表的提升轨道与轨道长度定理的计算验证"""
